use serde::{Deserialize, Serialize};

use crate::diagram::TreeDiagram;
use crate::dyadic::BinaryWord;
use crate::error::{Error, Result};

use super::word::{Generator, ProvenanceWord};
use super::{h_element, require_f};

/// The element has branch pairs `0ᵃ → 0ᵇ` and `1ᶜ → 1ᵈ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EndpointExponents {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl EndpointExponents {
    pub fn holds_for(&self, g: &TreeDiagram) -> bool {
        let zeros = |n: u32| BinaryWord::repeat(false, n as usize);
        let ones = |n: u32| BinaryWord::repeat(true, n as usize);
        [self.a, self.b, self.c, self.d].iter().all(|&e| e >= 1)
            && g.has_pair_of_branches(&zeros(self.a), &zeros(self.b))
            && g.has_pair_of_branches(&ones(self.c), &ones(self.d))
    }
}

/// Lengths of the outermost branches of the reduced diagram. The identity
/// uses `(1, 1, 1, 1)`, i.e. the expanded diagram `0 → 0, 1 → 1`.
pub fn endpoint_exponents(g: &TreeDiagram) -> Result<EndpointExponents> {
    require_f(g)?;
    let d = g.reduce();
    let e = if d.is_identity() {
        EndpointExponents {
            a: 1,
            b: 1,
            c: 1,
            d: 1,
        }
    } else {
        let pairs = d.pairs();
        let (u0, v0) = &pairs[0];
        let (u1, v1) = &pairs[pairs.len() - 1];
        EndpointExponents {
            a: u0.len() as u32,
            b: v0.len() as u32,
            c: u1.len() as u32,
            d: v1.len() as u32,
        }
    };
    if !e.holds_for(&d) {
        return Err(Error::Integrity(format!(
            "endpoint exponents {e:?} do not hold"
        )));
    }
    Ok(e)
}

/// `f = (h^{a+c})^g` with `h = x₀x₁`, carrying the pairs
/// `0ᵐ10 → 1ⁿ0` and `0ᵐ11 → 1ⁿ⁺¹0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConjWitness {
    pub g: TreeDiagram,
    pub exponents: EndpointExponents,
    pub f: TreeDiagram,
    pub m: u32,
    pub n: u32,
}

fn word(s: String) -> BinaryWord {
    s.parse().expect("binary literal")
}

impl ConjWitness {
    /// The two branch pairs `0ᵐ10 → 1ⁿ0` and `0ᵐ11 → 1ⁿ⁺¹0`.
    pub fn pairs(&self) -> [(BinaryWord, BinaryWord); 2] {
        let (m, n) = (self.m as usize, self.n as usize);
        [
            (
                word(format!("{}10", "0".repeat(m))),
                word(format!("{}0", "1".repeat(n))),
            ),
            (
                word(format!("{}11", "0".repeat(m))),
                word(format!("{}0", "1".repeat(n + 1))),
            ),
        ]
    }

    /// The exponent `a + c` with `f = C^{a+c}`.
    pub fn power(&self) -> i64 {
        i64::from(self.exponents.a + self.exponents.c)
    }

    pub fn check_pairs(&self) -> bool {
        self.pairs()
            .iter()
            .all(|(u, v)| self.f.has_pair_of_branches(u, v))
    }
}

pub fn conj_witness(g: &TreeDiagram) -> Result<ConjWitness> {
    let exponents = endpoint_exponents(g)?;
    let g = g.reduce();
    let k = i64::from(exponents.a + exponents.c);
    let f = h_element().pow(k).conjugate(&g);
    let w = ConjWitness {
        g,
        exponents,
        f,
        m: exponents.b,
        n: exponents.c + exponents.d + 1,
    };
    if !w.check_pairs() {
        return Err(Error::Integrity(format!(
            "f = (x0 x1)^{k} conjugated by g lacks the pairs {:?}",
            w.pairs()
        )));
    }
    Ok(w)
}

/// `h₁ = x₀^{−(m−1)} f x₀^{−(n−1)}` and `h₂ = x₀^{−(m−1)} f x₀^{−n}`.
pub fn closure_witnesses(w: &ConjWitness) -> Result<(TreeDiagram, TreeDiagram)> {
    let x0 = TreeDiagram::x0();
    let left = x0.pow(-(i64::from(w.m) - 1));
    let core = left.mul(&w.f);
    let h1 = core.mul(&x0.pow(-(i64::from(w.n) - 1)));
    let h2 = core.mul(&x0.pow(-i64::from(w.n)));
    let [p4, p5] = &SUFFICIENT_PAIRS[3..] else {
        unreachable!()
    };
    if !h1.has_pair_of_branches(&word(p4.0.into()), &word(p4.1.into())) {
        return Err(Error::Integrity("h1 lacks the pair 010 -> 10".into()));
    }
    if !h2.has_pair_of_branches(&word(p5.0.into()), &word(p5.1.into())) {
        return Err(Error::Integrity("h2 lacks the pair 011 -> 10".into()));
    }
    Ok((h1, h2))
}

/// Provenance words of `h₁` and `h₂` over `A, B, C`.
pub fn closure_words(w: &ConjWitness) -> (ProvenanceWord, ProvenanceWord) {
    let core =
        ProvenanceWord::power(Generator::A, -(i64::from(w.m) - 1)).then(Generator::C, w.power());
    (
        core.clone().then(Generator::A, -(i64::from(w.n) - 1)),
        core.then(Generator::A, -i64::from(w.n)),
    )
}

/// The five branch pairs whose presence in `H` forces `Cl(H) = F`.
pub const SUFFICIENT_PAIRS: [(&str, &str); 5] = [
    ("00", "0"),
    ("1", "11"),
    ("01", "10"),
    ("010", "10"),
    ("011", "10"),
];

/// Which listed element realizes each of the five pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SufficeReport {
    pub witnesses: [Option<usize>; 5],
}

impl SufficeReport {
    pub fn complete(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    /// `"sufficient"` when complete, otherwise `"inconclusive"`: missing
    /// pairs never show that `H` is a proper subgroup.
    pub fn verdict(&self) -> &'static str {
        if self.complete() {
            "sufficient"
        } else {
            "inconclusive"
        }
    }
}

pub fn suffice_check(elems: &[(TreeDiagram, ProvenanceWord)]) -> SufficeReport {
    let mut witnesses = [None; 5];
    for (slot, (u, v)) in witnesses.iter_mut().zip(SUFFICIENT_PAIRS) {
        let (u, v) = (word(u.into()), word(v.into()));
        *slot = elems
            .iter()
            .position(|(e, _)| e.has_pair_of_branches(&u, &v));
    }
    SufficeReport { witnesses }
}
