use serde::{Deserialize, Serialize};

use crate::diagram::TreeDiagram;
use crate::error::Result;

use super::require_f;

/// Image of an element of `F` in `F/[F,F] ≅ ℤ²`: the base-2 exponents of
/// the slopes at `0⁺` and at `1⁻`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AbelianImage {
    pub e0: i64,
    pub e1: i64,
}

impl std::ops::Add for AbelianImage {
    type Output = AbelianImage;

    fn add(self, other: AbelianImage) -> AbelianImage {
        AbelianImage {
            e0: self.e0 + other.e0,
            e1: self.e1 + other.e1,
        }
    }
}

pub fn abelianization(g: &TreeDiagram) -> Result<AbelianImage> {
    require_f(g)?;
    let d = g.reduce();
    let pairs = d.pairs();
    let (u0, v0) = &pairs[0];
    let (u1, v1) = &pairs[pairs.len() - 1];
    Ok(AbelianImage {
        e0: u0.len() as i64 - v0.len() as i64,
        e1: u1.len() as i64 - v1.len() as i64,
    })
}

/// Integer combinations of the images reaching `(1, 0)` and `(0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub unit_e0: Vec<i64>,
    pub unit_e1: Vec<i64>,
}

impl LatticeWitness {
    /// True iff both combinations evaluate to the unit vectors.
    pub fn check(&self, images: &[AbelianImage]) -> bool {
        let combine = |coeffs: &[i64]| -> Option<(i64, i64)> {
            if coeffs.len() != images.len() {
                return None;
            }
            let mut acc = (0i64, 0i64);
            for (c, img) in coeffs.iter().zip(images) {
                acc.0 = acc.0.checked_add(c.checked_mul(img.e0)?)?;
                acc.1 = acc.1.checked_add(c.checked_mul(img.e1)?)?;
            }
            Some(acc)
        };
        combine(&self.unit_e0) == Some((1, 0)) && combine(&self.unit_e1) == Some((0, 1))
    }
}

/// Decides whether the images generate `ℤ²`, returning a witness when they
/// do. Row reduction over `ℤ` with the unimodular transform tracked.
pub fn abelian_surjectivity(images: &[AbelianImage]) -> Option<LatticeWitness> {
    let k = images.len();
    let mut rows: Vec<[i64; 2]> = images.iter().map(|i| [i.e0, i.e1]).collect();
    let mut basis: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();

    // Euclid on column `col` over rows `from..`, leaving the gcd in row `from`.
    let eliminate =
        |rows: &mut Vec<[i64; 2]>, basis: &mut Vec<Vec<i64>>, col: usize, from: usize| loop {
            let pivot = (from..k)
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].unsigned_abs());
            let Some(p) = pivot else { return };
            rows.swap(from, p);
            basis.swap(from, p);
            let mut done = true;
            for i in from + 1..k {
                let q = rows[i][col] / rows[from][col];
                if q != 0 {
                    let (row, base) = (rows[from], basis[from].clone());
                    for (x, y) in rows[i].iter_mut().zip(row) {
                        *x -= q * y;
                    }
                    for (x, y) in basis[i].iter_mut().zip(base) {
                        *x -= q * y;
                    }
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                return;
            }
        };

    if k < 2 {
        return None;
    }
    eliminate(&mut rows, &mut basis, 0, 0);
    eliminate(&mut rows, &mut basis, 1, 1);
    if rows[0][0].abs() != 1 || rows[1][1].abs() != 1 {
        return None;
    }
    for r in 0..2 {
        if rows[r][r] < 0 {
            rows[r] = [-rows[r][0], -rows[r][1]];
            basis[r].iter_mut().for_each(|c| *c = -*c);
        }
    }
    let y = rows[0][1];
    let unit_e0: Vec<i64> = (0..k).map(|c| basis[0][c] - y * basis[1][c]).collect();
    let witness = LatticeWitness {
        unit_e0,
        unit_e1: basis[1].clone(),
    };
    debug_assert!(witness.check(images));
    Some(witness)
}
