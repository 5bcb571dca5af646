use serde::{Deserialize, Serialize};

use crate::diagram::TreeDiagram;
use crate::dyadic::{Dyadic, DyadicInterval, RegionSet};
use crate::error::{Error, Result};

use super::order::{detect_order, Budgets, OrderResult, RevealingEvidence};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WanderingKind {
    /// `γⁿ(U) ∩ U = ∅` whenever `γⁿ ≠ e`.
    Wandering,
    /// For every `n`, `γⁿ` fixes `U` pointwise or `γⁿ(U) ∩ U = ∅`.
    WeaklyWandering,
}

/// Evidence for a periodic `γ`: `γⁿ = e`, the point `x` has period `m`,
/// the images of `(x − eps, x]` under `γ⁰, …, γᵐ⁻¹` are pairwise disjoint
/// and `γᵐ` fixes `(x − eps, x]` pointwise.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PeriodicEvidence {
    pub order: u32,
    pub x: Dyadic,
    pub m: u32,
    pub eps: Dyadic,
}

impl PeriodicEvidence {
    pub fn interval(&self) -> DyadicInterval {
        DyadicInterval::HalfOpen(&self.x - &self.eps, self.x.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    Revealing(RevealingEvidence),
    Periodic(PeriodicEvidence),
}

/// A set `U` that is (weakly) `γ`-wandering, with the evidence that
/// certifies it for every power of `γ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WanderingCertificate {
    pub gamma: TreeDiagram,
    pub interval: DyadicInterval,
    pub kind: WanderingKind,
    pub evidence: Evidence,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Canonical `j ≠ k`: the first index other than `k`.
fn other_index(k: usize) -> usize {
    if k == 1 {
        2
    } else {
        1
    }
}

pub fn wandering_interval(gamma: &TreeDiagram, budgets: &Budgets) -> Result<WanderingCertificate> {
    let gamma = gamma.reduce();
    if gamma.is_identity() {
        return Err(Error::Identity);
    }
    let cert = match detect_order(&gamma, budgets) {
        OrderResult::InfiniteOrder(ev) => WanderingCertificate {
            interval: DyadicInterval::HalfOpenWord(ev.branch(other_index(ev.k))),
            gamma: gamma.clone(),
            kind: WanderingKind::Wandering,
            evidence: Evidence::Revealing(*ev),
        },
        OrderResult::Periodic(n) => {
            let ev = periodic_evidence(&gamma, n)?;
            WanderingCertificate {
                interval: ev.interval(),
                gamma: gamma.clone(),
                kind: periodic_kind(&ev),
                evidence: Evidence::Periodic(ev),
            }
        }
        OrderResult::Unknown(b) => {
            return Err(Error::Inconclusive(format!(
                "no order or revealing evidence found (max_order {}, expansion_budget {}, power_budget {})",
                b.max_order, b.expansion_budget, b.power_budget
            )))
        }
    };
    Ok(cert)
}

fn periodic_kind(ev: &PeriodicEvidence) -> WanderingKind {
    // Every orbit of the neighbourhood has full length, so no nontrivial
    // power fixes it.
    if ev.m == ev.order {
        WanderingKind::Wandering
    } else {
        WanderingKind::WeaklyWandering
    }
}

/// Candidate base points: right ends of source branches, then their
/// midpoints, in branch order.
fn candidates(gamma: &TreeDiagram) -> Vec<Dyadic> {
    let one = Dyadic::one();
    let ends = gamma
        .pairs()
        .iter()
        .map(|(u, _)| u.right_endpoint())
        .filter(|x| *x < one);
    let mids = gamma
        .pairs()
        .iter()
        .map(|(u, _)| &u.left_endpoint() + &u.width().half());
    ends.chain(mids).collect()
}

const MAX_EPS_EXPONENT: i64 = 256;

fn period_of(gamma: &TreeDiagram, x: &Dyadic, order: u32) -> Option<u32> {
    let mut y = x.clone();
    for s in 1..=order {
        y = gamma.evaluate(&y);
        if y == *x {
            return Some(s);
        }
    }
    None
}

/// Exact check of the periodic conditions for one `eps`.
fn eps_works(powers: &[TreeDiagram], x: &Dyadic, m: u32, eps: &Dyadic) -> bool {
    if eps > x {
        return false;
    }
    let u = RegionSet::linear(&(x - eps), x, false, true);
    let mut images = vec![u.clone()];
    for power in &powers[1..m as usize] {
        let im = power.map_region(&u);
        if images.iter().any(|prev| !prev.is_disjoint(&im)) {
            return false;
        }
        images.push(im);
    }
    powers[m as usize].fixes_pointwise(&u)
}

/// The canonical evidence: the first candidate point not fixed by `γ`, and
/// the largest `eps = 2⁻ʲ` that works.
pub fn periodic_evidence(gamma: &TreeDiagram, order: u32) -> Result<PeriodicEvidence> {
    let gamma = gamma.reduce();
    let mut powers = vec![TreeDiagram::identity()];
    for _ in 0..order {
        let next = powers.last().expect("nonempty").mul(&gamma);
        powers.push(next);
    }
    if !powers[order as usize].is_identity()
        || powers[1..order as usize]
            .iter()
            .any(TreeDiagram::is_identity)
    {
        return Err(Error::Integrity(format!(
            "element does not have order {order}"
        )));
    }
    for x in candidates(&gamma) {
        if gamma.evaluate(&x) == x {
            continue;
        }
        let Some(m) = period_of(&gamma, &x, order) else {
            continue;
        };
        for j in 1..=MAX_EPS_EXPONENT {
            let eps = Dyadic::pow2(-j);
            if eps_works(&powers, &x, m, &eps) {
                return Ok(PeriodicEvidence { order, x, m, eps });
            }
        }
    }
    Err(Error::Integrity("no periodic evidence found".into()))
}

/// Re-checks the certificate: the evidence exactly, then every power
/// `γⁿ` with `1 ≤ |n| ≤ n_max` by brute force.
pub fn verify_wandering(cert: &WanderingCertificate, n_max: u32) -> Result<()> {
    let gamma = &cert.gamma;
    if !gamma.is_reduced() {
        return Err(fail("gamma is not reduced"));
    }
    if gamma.is_identity() {
        return Err(fail("gamma is the identity"));
    }
    match &cert.evidence {
        Evidence::Revealing(ev) => {
            ev.verify(gamma)?;
            let want = DyadicInterval::HalfOpenWord(ev.branch(other_index(ev.k)));
            if cert.interval != want {
                return Err(fail(format!("interval should be {want}")));
            }
            if cert.kind != WanderingKind::Wandering {
                return Err(fail("revealing evidence gives a wandering set"));
            }
        }
        Evidence::Periodic(ev) => {
            let want = periodic_evidence(gamma, ev.order).map_err(|e| fail(e.to_string()))?;
            if *ev != want {
                return Err(fail(format!(
                    "periodic evidence is not canonical: expected x = {}, m = {}, eps = {}",
                    want.x, want.m, want.eps
                )));
            }
            if cert.interval != ev.interval() {
                return Err(fail(format!("interval should be {}", ev.interval())));
            }
            if cert.kind != periodic_kind(ev) {
                return Err(fail("kind does not match the local period"));
            }
        }
    }
    brute_force(gamma, &cert.interval.to_region(), cert.kind, n_max)
}

/// Checks the defining property for `1 ≤ |n| ≤ n_max`.
pub fn brute_force(
    gamma: &TreeDiagram,
    set: &RegionSet,
    kind: WanderingKind,
    n_max: u32,
) -> Result<()> {
    for (sign, base) in [(1i64, gamma.reduce()), (-1, gamma.inverse())] {
        let mut power = TreeDiagram::identity();
        for n in 1..=n_max {
            power = power.mul(&base);
            let ok = match kind {
                WanderingKind::Wandering => {
                    power.is_identity() || power.map_region(set).is_disjoint(set)
                }
                WanderingKind::WeaklyWandering => {
                    power.fixes_pointwise(set) || power.map_region(set).is_disjoint(set)
                }
            };
            if !ok {
                return Err(fail(format!(
                    "power {} meets the set without fixing it",
                    sign * i64::from(n)
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> TreeDiagram {
        "0 -> 1\n1 -> 0".parse().unwrap()
    }

    #[test]
    fn x0_wanders_on_10() {
        let cert = wandering_interval(&TreeDiagram::x0(), &Budgets::default()).unwrap();
        assert_eq!(cert.interval.to_string(), "(10]");
        assert_eq!(cert.kind, WanderingKind::Wandering);
        assert!(verify_wandering(&cert, 50).is_ok());
    }

    #[test]
    fn swap_is_periodic_and_wandering() {
        let cert = wandering_interval(&swap(), &Budgets::default()).unwrap();
        let Evidence::Periodic(ev) = &cert.evidence else {
            panic!("expected periodic evidence")
        };
        assert_eq!((ev.order, ev.m), (2, 2));
        // The swap is a rotation, so the set is wandering, not merely weakly.
        assert_eq!(cert.kind, WanderingKind::Wandering);
        assert!(verify_wandering(&cert, 50).is_ok());
    }

    #[test]
    fn partial_swap_is_weakly_wandering() {
        // Swaps (00] and (01], fixes (1].
        let g: TreeDiagram = "00 -> 01\n01 -> 00\n1 -> 1".parse().unwrap();
        let cert = wandering_interval(&g, &Budgets::default()).unwrap();
        assert!(verify_wandering(&cert, 50).is_ok());
        let Evidence::Periodic(ev) = &cert.evidence else {
            panic!("expected periodic evidence")
        };
        assert_eq!(ev.m, 2);
    }

    #[test]
    fn weak_kind_exercises_the_fixed_branch() {
        // A 3-cycle on quarter intervals next to a swap: order 6, and the
        // first candidate point has period 3.
        let g: TreeDiagram = "000 -> 001\n001 -> 01\n01 -> 000\n10 -> 11\n11 -> 10"
            .parse()
            .unwrap();
        let cert = wandering_interval(&g, &Budgets::default()).unwrap();
        let Evidence::Periodic(ev) = &cert.evidence else {
            panic!("expected periodic evidence")
        };
        assert_eq!((ev.order, ev.m), (6, 3));
        assert_eq!(cert.kind, WanderingKind::WeaklyWandering);
        assert!(verify_wandering(&cert, 50).is_ok());
        // Wandering in the strong sense fails at n = 3.
        assert!(brute_force(&g, &cert.interval.to_region(), WanderingKind::Wandering, 3).is_err());
    }

    #[test]
    fn identity_rejected() {
        assert_eq!(
            wandering_interval(&TreeDiagram::identity(), &Budgets::default()),
            Err(Error::Identity)
        );
    }

    #[test]
    fn widened_interval_fails() {
        let mut cert = wandering_interval(&TreeDiagram::x0(), &Budgets::default()).unwrap();
        cert.interval = "(1]".parse().unwrap();
        assert!(verify_wandering(&cert, 50).is_err());
        assert!(brute_force(
            &TreeDiagram::x0(),
            &cert.interval.to_region(),
            WanderingKind::Wandering,
            5
        )
        .is_err());
    }
}
