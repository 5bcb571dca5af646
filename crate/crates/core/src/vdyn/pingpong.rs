use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{enumerate_elements, ElementClass, TreeDiagram};
use crate::dyadic::{Dyadic, DyadicInterval, RegionSet};
use crate::error::{Error, Result};

use super::order::{detect_order, Budgets, OrderResult};
use super::transfer::{avoid_conjugator, verify_transferred, TransferredCertificate};
use super::wandering::WanderingKind;

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Representatives `γₙ`, pairwise disjoint open intervals `Iₙ`, and for
/// each `n` a certificate that `Iₙᶜ` is (weakly) wandering for the
/// conjugate of `γₙ` it carries.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PingPongInstance {
    pub class: ElementClass,
    pub reps: Vec<TreeDiagram>,
    pub intervals: Vec<DyadicInterval>,
    pub certs: Vec<TransferredCertificate>,
}

impl PingPongInstance {
    /// The conjugated elements `γₙᵍⁿ`.
    pub fn elements(&self) -> Vec<TreeDiagram> {
        self.certs.iter().map(|c| c.gamma.clone()).collect()
    }

    pub fn conjugators(&self) -> Vec<TreeDiagram> {
        self.certs.iter().map(|c| c.conjugator.clone()).collect()
    }
}

fn instance_class(reps: &[TreeDiagram]) -> ElementClass {
    reps.iter()
        .map(TreeDiagram::class)
        .max()
        .unwrap_or(ElementClass::F)
}

fn check_intervals(intervals: &[DyadicInterval]) -> Result<Vec<RegionSet>> {
    let regions: Vec<RegionSet> = intervals.iter().map(DyadicInterval::to_region).collect();
    for (i, iv) in intervals.iter().enumerate() {
        if !matches!(iv, DyadicInterval::Open(..)) {
            return Err(Error::InvalidInterval(format!(
                "{iv} is not an open interval"
            )));
        }
        for j in 0..i {
            if !regions[i].is_disjoint(&regions[j]) {
                return Err(Error::InvalidInterval(format!(
                    "{} and {} overlap",
                    intervals[j], iv
                )));
            }
        }
    }
    Ok(regions)
}

/// The instance class is the largest class among the representatives.
pub fn build_pingpong(
    reps: &[TreeDiagram],
    intervals: &[DyadicInterval],
    budgets: &Budgets,
) -> Result<PingPongInstance> {
    if reps.is_empty() || reps.len() != intervals.len() {
        return Err(Error::InvalidInterval(format!(
            "{} representatives for {} intervals",
            reps.len(),
            intervals.len()
        )));
    }
    let regions = check_intervals(intervals)?;
    let mut certs = Vec::with_capacity(reps.len());
    for (rep, region) in reps.iter().zip(&regions) {
        certs.push(avoid_conjugator(rep, &region.complement(), budgets)?);
    }
    Ok(PingPongInstance {
        class: instance_class(reps),
        reps: reps.iter().map(TreeDiagram::reduce).collect(),
        intervals: intervals.to_vec(),
        certs,
    })
}

/// Whether `γᵏ` must send `Iᵢ` into `Iₙ`: always for wandering
/// certificates, and for weak ones unless `γᵏ` fixes `Iₙᶜ` pointwise.
fn inclusion_holds(
    power: &TreeDiagram,
    kind: WanderingKind,
    outside: &RegionSet,
    from: &RegionSet,
    into: &RegionSet,
) -> bool {
    if power.is_identity() {
        return true;
    }
    if kind == WanderingKind::WeaklyWandering && power.fixes_pointwise(outside) {
        return true;
    }
    power.map_region(from).is_subset(into)
}

/// Re-verifies every certificate and spot-checks `γₙᵏ(Iᵢ) ⊆ Iₙ` for
/// `i ≠ n` and `1 ≤ |k| ≤ n_max`.
pub fn verify_pingpong(inst: &PingPongInstance, n_max: u32) -> Result<()> {
    let regions = check_intervals(&inst.intervals).map_err(|e| fail(e.to_string()))?;
    if inst.reps.is_empty() || inst.reps.len() != regions.len() || inst.certs.len() != regions.len()
    {
        return Err(fail(
            "representatives, intervals and certificates differ in number",
        ));
    }
    if inst.class != instance_class(&inst.reps) {
        return Err(fail(format!(
            "class should be {}",
            instance_class(&inst.reps)
        )));
    }
    for (n, ((rep, cert), region)) in inst.reps.iter().zip(&inst.certs).zip(&regions).enumerate() {
        let label = n + 1;
        if !rep.is_reduced() || rep.is_identity() {
            return Err(fail(format!(
                "representative {label} is not a reduced nontrivial element"
            )));
        }
        if cert.base.gamma != *rep {
            return Err(fail(format!(
                "certificate {label} is for a different element"
            )));
        }
        if cert.set != region.complement() {
            return Err(fail(format!(
                "certificate {label} is not for the complement of I{label}"
            )));
        }
        if inst.class <= ElementClass::T && cert.kind != WanderingKind::Wandering {
            return Err(fail(format!("certificate {label} must be wandering in T")));
        }
        verify_transferred(cert, n_max).map_err(|e| fail(format!("certificate {label}: {e}")))?;
        for (sign, base) in [(1, cert.gamma.clone()), (-1, cert.gamma.inverse())] {
            let mut power = TreeDiagram::identity();
            for k in 1..=n_max {
                power = power.mul(&base);
                for (i, from) in regions.iter().enumerate() {
                    if i != n && !inclusion_holds(&power, cert.kind, &cert.set, from, region) {
                        return Err(fail(format!(
                            "element {label} to the power {} does not send I{} into I{label}",
                            sign * i64::from(k),
                            i + 1
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `((2n)/2^q, (2n+1)/2^q)` for `n = 0..count`, with `2^q ≥ max(16, 2·count)`.
pub fn t_intervals(count: usize) -> Vec<DyadicInterval> {
    let mut q = 4;
    while (1usize << q) < 2 * count {
        q += 1;
    }
    (0..count)
        .map(|n| {
            let lo = Dyadic::new(2 * n as i64, q);
            let hi = Dyadic::new(2 * n as i64 + 1, q);
            DyadicInterval::open(lo, hi).expect("nonempty")
        })
        .collect()
}

/// `Iₙ = (2^-(n+2), 3·2^-(n+3))` for `n = 1..=count`, inside `(0, 1/4)` and
/// accumulating at `0`.
pub fn v_intervals(count: usize) -> Vec<DyadicInterval> {
    (1..=count as u32)
        .map(|n| {
            DyadicInterval::open(Dyadic::new(1, n + 2), Dyadic::new(3, n + 3)).expect("nonempty")
        })
        .collect()
}

/// The first `count` nontrivial representatives of `class` with the
/// standard intervals for that class.
pub fn standard_instance(
    class: ElementClass,
    count: usize,
    budgets: &Budgets,
) -> Result<PingPongInstance> {
    let reps = enumerate_elements(class, count);
    let intervals = match class {
        ElementClass::V => v_intervals(count),
        _ => t_intervals(count),
    };
    build_pingpong(&reps, &intervals, budgets)
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct FreeProductReport {
    pub words: usize,
    pub identities: usize,
    pub inclusion_checks: usize,
    pub inclusion_failures: usize,
}

impl fmt::Display for FreeProductReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} reduced words, {} evaluated to the identity; {} inclusion checks, {} failed",
            self.words, self.identities, self.inclusion_checks, self.inclusion_failures
        )
    }
}

/// Order of each element, or `None` for infinite order.
fn orders(elements: &[TreeDiagram], budgets: &Budgets) -> Result<Vec<Option<u32>>> {
    elements
        .iter()
        .map(|e| match detect_order(e, budgets) {
            OrderResult::Periodic(n) => Ok(Some(n)),
            OrderResult::InfiniteOrder(_) => Ok(None),
            OrderResult::Unknown(_) => {
                Err(Error::Inconclusive("order of a ping-pong element".into()))
            }
        })
        .collect()
}

/// Samples reduced words (adjacent syllables on different elements,
/// exponents in `±1..=±3` with `γₙᵏ ≠ e`) of `1..=max_len` syllables and
/// checks that none is the identity, together with `γₙᵏ(Iᵢ) ⊆ Iₙ` for
/// every syllable seen. Words are drawn from a ChaCha8 stream seeded
/// with `seed`.
pub fn free_product_test(
    inst: &PingPongInstance,
    max_len: usize,
    trials: usize,
    seed: u64,
) -> Result<FreeProductReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = inst.elements();
    let orders = orders(&elements, &Budgets::default())?;
    let regions: Vec<RegionSet> = inst
        .intervals
        .iter()
        .map(DyadicInterval::to_region)
        .collect();
    let n = elements.len();
    let mut cache: HashMap<(usize, i64), TreeDiagram> = HashMap::new();
    let mut report = FreeProductReport::default();
    for _ in 0..trials {
        let len = rng.gen_range(1..=max_len);
        let mut word = TreeDiagram::identity();
        let mut prev: Option<usize> = None;
        for _ in 0..len {
            let idx = loop {
                let i = rng.gen_range(0..n);
                if Some(i) != prev || n == 1 {
                    break i;
                }
            };
            if prev == Some(idx) {
                break;
            }
            let k = loop {
                let k: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                if orders[idx].is_none_or(|o| k.rem_euclid(i64::from(o)) != 0) {
                    break k;
                }
            };
            let power = cache.entry((idx, k)).or_insert_with(|| {
                let p = elements[idx].pow(k);
                let cert = &inst.certs[idx];
                for (i, from) in regions.iter().enumerate() {
                    if i != idx {
                        report.inclusion_checks += 1;
                        if !inclusion_holds(&p, cert.kind, &cert.set, from, &regions[idx]) {
                            report.inclusion_failures += 1;
                        }
                    }
                }
                p
            });
            word = word.mul(power);
            prev = Some(idx);
        }
        report.words += 1;
        if word.is_identity() {
            report.identities += 1;
        }
    }
    Ok(report)
}

/// A letter `γᵢ^{±1}` (0-based `i`).
pub type Letter = (usize, i8);

/// Exact breadth-first orbit of `start` over words of length at most
/// `max_word_len` in the generators and their inverses. Each point is
/// returned with a shortest word reaching it.
pub fn orbit_bfs(
    gens: &[TreeDiagram],
    start: &Dyadic,
    max_word_len: usize,
) -> BTreeMap<Dyadic, Vec<Letter>> {
    let letters: Vec<(Letter, TreeDiagram)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| [((i, 1i8), g.reduce()), ((i, -1i8), g.inverse())])
        .collect();
    let start = start.frac();
    let mut seen: BTreeMap<Dyadic, Vec<Letter>> = BTreeMap::new();
    seen.insert(start.clone(), Vec::new());
    let mut frontier = VecDeque::from([start]);
    for _ in 0..max_word_len {
        let mut next = VecDeque::new();
        while let Some(x) = frontier.pop_front() {
            let word = seen[&x].clone();
            for (letter, g) in &letters {
                let y = g.evaluate(&x);
                if !seen.contains_key(&y) {
                    let mut w = word.clone();
                    w.push(*letter);
                    seen.insert(y.clone(), w);
                    next.push_back(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Groups letters into syllables `(i, k)`.
pub fn syllables(word: &[Letter]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for &(i, s) in word {
        match out.last_mut() {
            Some((j, k)) if *j == i => *k += i64::from(s),
            _ => out.push((i, i64::from(s))),
        }
    }
    out.retain(|&(_, k)| k != 0);
    out
}

/// Renders a word as `g2^-1 g1`, 1-based; the empty word is `e`.
pub fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    syllables(word)
        .iter()
        .map(|&(i, k)| {
            if k == 1 {
                format!("g{}", i + 1)
            } else {
                format!("g{}^{k}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every point `α ≠ 0` of the orbit lies in `I` of the last syllable of
/// its shortest word.
pub fn orbit_lemma_check(inst: &PingPongInstance, orbit: &BTreeMap<Dyadic, Vec<Letter>>) -> bool {
    let regions: Vec<RegionSet> = inst
        .intervals
        .iter()
        .map(DyadicInterval::to_region)
        .collect();
    orbit.iter().all(|(alpha, word)| {
        if alpha.is_zero() {
            return true;
        }
        match syllables(word).last() {
            Some(&(i, _)) => regions[i].contains(alpha),
            None => false,
        }
    })
}

/// One orbit point with its shortest word.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub point: Dyadic,
    pub word: String,
}

/// The orbit of `0` under a `V` instance up to a word length, with the
/// containment in `[0, 1/4)` and the last-syllable property.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitCertificate {
    pub instance: PingPongInstance,
    pub max_word_len: usize,
    pub orbit: Vec<OrbitPoint>,
}

fn orbit_points(orbit: &BTreeMap<Dyadic, Vec<Letter>>) -> Vec<OrbitPoint> {
    orbit
        .iter()
        .map(|(p, w)| OrbitPoint {
            point: p.clone(),
            word: format_word(w),
        })
        .collect()
}

fn check_orbit(inst: &PingPongInstance, orbit: &BTreeMap<Dyadic, Vec<Letter>>) -> Result<()> {
    let quarter = Dyadic::new(1, 2);
    if let Some(p) = orbit.keys().find(|p| **p >= quarter) {
        return Err(fail(format!("orbit point {p} is outside [0, 1/4)")));
    }
    if !orbit_lemma_check(inst, orbit) {
        return Err(fail(
            "some orbit point is not in the interval of its last syllable",
        ));
    }
    Ok(())
}

pub fn orbit_certificate(inst: PingPongInstance, max_word_len: usize) -> Result<OrbitCertificate> {
    let orbit = orbit_bfs(&inst.elements(), &Dyadic::zero(), max_word_len);
    check_orbit(&inst, &orbit)?;
    Ok(OrbitCertificate {
        orbit: orbit_points(&orbit),
        instance: inst,
        max_word_len,
    })
}

pub fn verify_orbit(cert: &OrbitCertificate, n_max: u32) -> Result<()> {
    if cert.instance.class != ElementClass::V {
        return Err(fail("orbit certificates are for V instances"));
    }
    verify_pingpong(&cert.instance, n_max)?;
    let quarter = RegionSet::linear(&Dyadic::zero(), &Dyadic::new(1, 2), false, false);
    for iv in &cert.instance.intervals {
        if !iv.to_region().is_subset(&quarter) {
            return Err(fail(format!("{iv} is not inside (0, 1/4)")));
        }
    }
    let orbit = orbit_bfs(
        &cert.instance.elements(),
        &Dyadic::zero(),
        cert.max_word_len,
    );
    check_orbit(&cert.instance, &orbit)?;
    if orbit_points(&orbit) != cert.orbit {
        return Err(fail("recorded orbit differs from the recomputed one"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> DyadicInterval {
        s.parse().unwrap()
    }

    #[test]
    fn three_representatives() {
        let swap: TreeDiagram = "0 -> 1\n1 -> 0".parse().unwrap();
        let h = TreeDiagram::x0().mul(&TreeDiagram::x1());
        let reps = [TreeDiagram::x0(), h, swap];
        let intervals = [
            iv("(0/2^0,1/2^3)"),
            iv("(1/2^2,3/2^3)"),
            iv("(1/2^1,5/2^3)"),
        ];
        let inst = build_pingpong(&reps, &intervals, &Budgets::default()).unwrap();
        assert_eq!(inst.class, ElementClass::T);
        assert!(verify_pingpong(&inst, 10).is_ok());
        let report = free_product_test(&inst, 6, 50, 1).unwrap();
        assert_eq!((report.identities, report.inclusion_failures), (0, 0));
    }

    #[test]
    fn single_representative() {
        let inst = build_pingpong(
            &[TreeDiagram::x0()],
            &[iv("(0/2^0,1/2^2)")],
            &Budgets::default(),
        )
        .unwrap();
        assert_eq!(inst.class, ElementClass::F);
        assert!(verify_pingpong(&inst, 10).is_ok());
    }

    #[test]
    fn shared_interval_rejected() {
        let reps = [TreeDiagram::x0(), TreeDiagram::x1()];
        let intervals = [iv("(0/2^0,1/2^2)"), iv("(1/2^3,1/2^1)")];
        assert!(build_pingpong(&reps, &intervals, &Budgets::default()).is_err());
    }

    #[test]
    fn word_syllables() {
        let w: Vec<Letter> = vec![(1, -1), (1, -1), (0, 1)];
        assert_eq!(syllables(&w), vec![(1, -2), (0, 1)]);
        assert_eq!(format_word(&w), "g2^-2 g1");
        assert_eq!(format_word(&[]), "e");
    }

    #[test]
    fn trivial_orbits() {
        let o = orbit_bfs(&[TreeDiagram::identity()], &Dyadic::zero(), 3);
        assert_eq!(o.keys().cloned().collect::<Vec<_>>(), vec![Dyadic::zero()]);
        let o = orbit_bfs(&[TreeDiagram::x0()], &Dyadic::zero(), 3);
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn intervals_are_disjoint() {
        assert!(check_intervals(&t_intervals(5)).is_ok());
        assert!(check_intervals(&v_intervals(4)).is_ok());
        assert_eq!(v_intervals(1)[0].to_string(), "(1/2^3,3/2^4)");
    }
}
