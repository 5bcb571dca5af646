use serde::{Deserialize, Serialize};

use crate::diagram::{ElementClass, TreeDiagram};
use crate::dyadic::{BinaryWord, Dyadic, DyadicInterval, RegionSet};
use crate::error::{Error, Result};

use super::order::Budgets;
use super::wandering::{
    brute_force, verify_wandering, wandering_interval, WanderingCertificate, WanderingKind,
};

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Maximal word intervals covering the linear piece `(lo, hi]`, left to right.
fn linear_words(lo: &Dyadic, hi: &Dyadic) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x < *hi {
        // Largest 2^-k aligned at x that fits.
        let mut k: u32 = x.exponent();
        while &x + &Dyadic::pow2(-i64::from(k)) > *hi {
            k += 1;
        }
        let scaled = x.mul_pow2(i64::from(k));
        let index = scaled.numerator().clone();
        let bits: Vec<bool> = (0..k).rev().map(|b| index.bit(u64::from(b))).collect();
        out.push(BinaryWord::from_bits(bits));
        x = &x + &Dyadic::pow2(-i64::from(k));
    }
    out
}

/// Word intervals covering the arc `(a, b]`, in order around the circle.
fn arc_words(a: &Dyadic, b: &Dyadic) -> Result<Vec<BinaryWord>> {
    let len = (b - a).frac();
    if len.is_zero() {
        return Err(Error::InvalidInterval(format!(
            "({a},{b}) is not a proper subinterval of the circle"
        )));
    }
    let start = a.frac();
    let end = &start + &len;
    let one = Dyadic::one();
    if end <= one {
        Ok(linear_words(&start, &end))
    } else {
        let mut words = linear_words(&start, &one);
        words.extend(linear_words(&Dyadic::zero(), &(&end - &one)));
        Ok(words)
    }
}

/// Splits the earliest widest word until there are `n` words.
fn refine_to(words: &mut Vec<BinaryWord>, n: usize) {
    while words.len() < n {
        let widest = words.iter().map(BinaryWord::len).min().expect("nonempty");
        let i = words
            .iter()
            .position(|w| w.len() == widest)
            .expect("exists");
        let w = words.remove(i);
        words.insert(i, w.child(true));
        words.insert(i, w.child(false));
    }
}

/// An element of `T` mapping the open arc `src` onto the open arc `dst`,
/// affine on each word interval of a common subdivision.
pub fn transitive_map(src: &DyadicInterval, dst: &DyadicInterval) -> Result<TreeDiagram> {
    let (a, b) = src.endpoints();
    let (c, d) = dst.endpoints();
    let mut s_in = arc_words(&a, &b)?;
    let mut s_out = arc_words(&b, &a)?;
    let mut t_in = arc_words(&c, &d)?;
    let mut t_out = arc_words(&d, &c)?;
    let n_in = s_in.len().max(t_in.len());
    let n_out = s_out.len().max(t_out.len());
    refine_to(&mut s_in, n_in);
    refine_to(&mut t_in, n_in);
    refine_to(&mut s_out, n_out);
    refine_to(&mut t_out, n_out);
    let pairs = s_in
        .into_iter()
        .zip(t_in)
        .chain(s_out.into_iter().zip(t_out))
        .collect();
    let g = TreeDiagram::from_pairs(pairs)?.reduce();
    debug_assert_eq!(
        g.map_region(&src.interior().to_region()),
        dst.interior().to_region()
    );
    Ok(g)
}

/// The open arc `(c, d) ⊇ A` left by removing the middle half of the
/// longest gap of `A` (the first one on ties).
pub fn cover_arc(set: &RegionSet) -> Result<DyadicInterval> {
    if set.is_full() {
        return Err(Error::InvalidInterval("the set is the whole circle".into()));
    }
    let gaps = set.complement().arcs();
    let (p, q, _, _) = gaps
        .iter()
        .fold(
            None::<&(Dyadic, Dyadic, bool, bool)>,
            |best, g| match best {
                Some(b) if &b.1 - &b.0 >= &g.1 - &g.0 => Some(b),
                _ => Some(g),
            },
        )
        .expect("complement is nonempty");
    let quarter = (q - p).mul_pow2(-2);
    let c = (q - &quarter).frac();
    let len = &Dyadic::one() - &quarter.mul_pow2(1);
    DyadicInterval::open(c.clone(), &c + &len)
}

/// `A` is (weakly) `γᵍ`-wandering because `g` maps the interior of a
/// (weakly) `γ`-wandering interval onto an arc containing `A`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TransferredCertificate {
    pub base: WanderingCertificate,
    pub source: DyadicInterval,
    pub target: DyadicInterval,
    pub conjugator: TreeDiagram,
    pub gamma: TreeDiagram,
    pub set: RegionSet,
    pub kind: WanderingKind,
}

pub fn avoid_conjugator(
    gamma: &TreeDiagram,
    set: &RegionSet,
    budgets: &Budgets,
) -> Result<TransferredCertificate> {
    let target = cover_arc(set)?;
    let base = wandering_interval(gamma, budgets)?;
    let source = base.interval.interior();
    let conjugator = transitive_map(&source, &target)?;
    Ok(TransferredCertificate {
        gamma: base.gamma.conjugate(&conjugator),
        kind: base.kind,
        base,
        source,
        target,
        conjugator,
        set: set.clone(),
    })
}

pub fn verify_transferred(cert: &TransferredCertificate, n_max: u32) -> Result<()> {
    verify_wandering(&cert.base, n_max)?;
    if cert.source != cert.base.interval.interior() {
        return Err(fail("source arc is not the interior of the base interval"));
    }
    if cert.target != cover_arc(&cert.set).map_err(|e| fail(e.to_string()))? {
        return Err(fail("target arc is not the canonical cover of the set"));
    }
    if !cert.set.is_subset(&cert.target.to_region()) {
        return Err(fail("set is not inside the target arc"));
    }
    let g = &cert.conjugator;
    if g.class() > ElementClass::T || !g.is_reduced() {
        return Err(fail("conjugator is not a reduced element of T"));
    }
    if *g != transitive_map(&cert.source, &cert.target).map_err(|e| fail(e.to_string()))? {
        return Err(fail("conjugator is not the canonical transitive map"));
    }
    if g.map_region(&cert.source.to_region()) != cert.target.to_region() {
        return Err(fail(
            "conjugator does not map the source arc onto the target arc",
        ));
    }
    if cert.gamma != cert.base.gamma.conjugate(g) {
        return Err(fail("gamma is not the conjugate of the base element"));
    }
    if cert.kind != cert.base.kind {
        return Err(fail("kind differs from the base certificate"));
    }
    brute_force(&cert.gamma, &cert.set, cert.kind, n_max)
}
