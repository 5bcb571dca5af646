use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{random_element, ElementClass, TreeDiagram};
use crate::dyadic::{BinaryWord, Dyadic};
use crate::error::{Error, Result};

use super::abelian::{abelian_surjectivity, abelianization, AbelianImage, LatticeWitness};
use super::branches::{
    closure_witnesses, closure_words, conj_witness, suffice_check, ConjWitness, SUFFICIENT_PAIRS,
};
use super::word::{Generator, ProvenanceWord};
use super::{h_element, require_f};

/// Leaf bound for conjugators drawn from a recorded seed.
pub const SAMPLE_MAX_LEAVES: usize = 10;

/// The conjugator pair `(h, g)` drawn from `seed`.
pub fn sample_conjugators(seed: u64) -> (TreeDiagram, TreeDiagram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_element(&mut rng, SAMPLE_MAX_LEAVES, ElementClass::F);
    let g = random_element(&mut rng, SAMPLE_MAX_LEAVES, ElementClass::F);
    (h, g)
}

/// True iff `elem` fixes `alpha ∈ (0, 1)` with slope exponents `0` on the
/// left and `1` on the right.
pub fn is_slope_break(elem: &TreeDiagram, alpha: &Dyadic) -> bool {
    if *alpha <= Dyadic::zero() || *alpha >= Dyadic::one() || elem.evaluate(alpha) != *alpha {
        return false;
    }
    matches!(elem.slopes_at(alpha), Ok(s) if s.left == 0 && s.right == 1 && s.continuous)
}

/// A fixed dyadic point of `elem` with slopes `(1, 2)`. `hint` is tried
/// first; otherwise the fixed breakpoints are scanned left to right.
pub fn slope_break_cert(elem: &TreeDiagram, hint: Option<&Dyadic>) -> Option<Dyadic> {
    if let Some(alpha) = hint {
        if is_slope_break(elem, alpha) {
            return Some(alpha.clone());
        }
    }
    elem.fixed_dyadic_points()
        .into_iter()
        .find(|alpha| is_slope_break(elem, alpha))
}

/// `x₀`, `x₁ʰ` and `(x₀x₁)ᵍ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Generators {
    #[serde(rename = "A")]
    pub a: TreeDiagram,
    #[serde(rename = "B")]
    pub b: TreeDiagram,
    #[serde(rename = "C")]
    pub c: TreeDiagram,
}

impl Generators {
    pub fn new(h: &TreeDiagram, g: &TreeDiagram) -> Self {
        Generators {
            a: TreeDiagram::x0(),
            b: TreeDiagram::x1().conjugate(h),
            c: h_element().conjugate(g),
        }
    }

    pub fn as_array(&self) -> [TreeDiagram; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    fn get(&self, g: Generator) -> &TreeDiagram {
        match g {
            Generator::A => &self.a,
            Generator::B => &self.b,
            Generator::C => &self.c,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianSection {
    /// Images of `A`, `B`, `C` in that order.
    pub images: Vec<AbelianImage>,
    pub witness: LatticeWitness,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SlopeBreak {
    pub generator: Generator,
    pub alpha: Dyadic,
}

/// One of the five sufficient branch pairs with the element realizing it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairWitness {
    pub pair: String,
    pub word: ProvenanceWord,
    pub element: TreeDiagram,
}

/// Certificate that `{x₀, x₁ʰ, (x₀x₁)ᵍ}` generates `F`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GenerationCertificate {
    /// Present when `(h, g)` was drawn by [`sample_conjugators`].
    pub seed: Option<u64>,
    pub h: TreeDiagram,
    pub g: TreeDiagram,
    pub generators: Generators,
    pub abelian: AbelianSection,
    pub slope_break: SlopeBreak,
    pub conj: ConjWitness,
    pub closure: Vec<PairWitness>,
}

fn pair_text((u, v): (&str, &str)) -> String {
    format!("{u} -> {v}")
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

pub fn invariable_generation_cert(
    h: &TreeDiagram,
    g: &TreeDiagram,
) -> Result<GenerationCertificate> {
    build(None, h, g)
}

/// Certificate for the conjugators drawn from `seed`.
pub fn seeded_generation_cert(seed: u64) -> Result<GenerationCertificate> {
    let (h, g) = sample_conjugators(seed);
    build(Some(seed), &h, &g)
}

fn build(seed: Option<u64>, h: &TreeDiagram, g: &TreeDiagram) -> Result<GenerationCertificate> {
    require_f(h)?;
    require_f(g)?;
    let (h, g) = (h.reduce(), g.reduce());
    let generators = Generators::new(&h, &g);

    let images = [&generators.a, &generators.b, &generators.c]
        .into_iter()
        .map(abelianization)
        .collect::<Result<Vec<_>>>()?;
    let witness = abelian_surjectivity(&images)
        .ok_or_else(|| fail("condition (2): abelian images do not generate Z^2"))?;

    let alpha = slope_break_cert(&generators.b, Some(&h.evaluate(&Dyadic::new(1, 1))))
        .ok_or_else(|| fail("condition (3): B has no fixed point with slopes (1, 2)"))?;

    let conj = conj_witness(&g)?;
    let (h1, h2) = closure_witnesses(&conj)?;
    let (w1, w2) = closure_words(&conj);
    let a_word = ProvenanceWord::letter(Generator::A);
    let elems = vec![(generators.a.clone(), a_word), (h1, w1), (h2, w2)];
    let report = suffice_check(&elems);
    if !report.complete() {
        return Err(fail(format!(
            "condition (1): {} (pairs realized: {:?})",
            report.verdict(),
            report.witnesses
        )));
    }
    let closure = SUFFICIENT_PAIRS
        .iter()
        .zip(report.witnesses)
        .map(|(&pair, idx)| {
            let (element, word) = elems[idx.expect("complete")].clone();
            PairWitness {
                pair: pair_text(pair),
                word,
                element,
            }
        })
        .collect();

    let cert = GenerationCertificate {
        seed,
        h,
        g,
        generators,
        abelian: AbelianSection { images, witness },
        slope_break: SlopeBreak {
            generator: Generator::B,
            alpha,
        },
        conj,
        closure,
    };
    verify_generation_certificate(&cert)?;
    Ok(cert)
}

/// Re-checks every claim of the certificate from scratch, then checks that
/// each field is the one the construction produces.
pub fn verify_generation_certificate(cert: &GenerationCertificate) -> Result<()> {
    for (name, d) in [("h", &cert.h), ("g", &cert.g)] {
        require_f(d).map_err(|e| fail(format!("conjugator {name}: {e}")))?;
        if !d.is_reduced() {
            return Err(fail(format!("conjugator {name} is not reduced")));
        }
    }
    if let Some(seed) = cert.seed {
        if sample_conjugators(seed) != (cert.h.clone(), cert.g.clone()) {
            return Err(fail(format!(
                "conjugators are not the ones drawn from seed {seed}"
            )));
        }
    }

    let expected = Generators::new(&cert.h, &cert.g);
    for (name, stored, want) in [
        ("A", &cert.generators.a, &expected.a),
        ("B", &cert.generators.b, &expected.b),
        ("C", &cert.generators.c, &expected.c),
    ] {
        if stored != want {
            return Err(fail(format!(
                "generator {name} does not match its definition"
            )));
        }
    }
    let gens = cert.generators.as_array();

    // Condition (2).
    let images = gens
        .iter()
        .map(abelianization)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| fail(e.to_string()))?;
    if cert.abelian.images != images {
        return Err(fail("condition (2): abelian images are wrong"));
    }
    if !cert.abelian.witness.check(&images) {
        return Err(fail(
            "condition (2): lattice witness does not reach (1,0) and (0,1)",
        ));
    }

    // Condition (3).
    let sb = &cert.slope_break;
    if !is_slope_break(cert.generators.get(sb.generator), &sb.alpha) {
        return Err(fail(format!(
            "condition (3): {:?} does not fix {} with slopes (1, 2)",
            sb.generator, sb.alpha
        )));
    }

    // Condition (1).
    let cw = &cert.conj;
    if cw.g != cert.g {
        return Err(fail(
            "condition (1): conjugation witness uses a different g",
        ));
    }
    if !cw.exponents.holds_for(&cert.g) {
        return Err(fail("condition (1): g lacks the claimed endpoint pairs"));
    }
    if cw.m != cw.exponents.b || cw.n != cw.exponents.c + cw.exponents.d + 1 {
        return Err(fail(
            "condition (1): m, n do not match the endpoint exponents",
        ));
    }
    if cw.f != cert.generators.c.pow(cw.power()) {
        return Err(fail("condition (1): f is not C^(a+c)"));
    }
    if !cw.check_pairs() {
        return Err(fail("condition (1): f lacks its two branch pairs"));
    }
    if cert.closure.len() != SUFFICIENT_PAIRS.len() {
        return Err(fail("condition (1): expected five branch-pair witnesses"));
    }
    for (pw, &pair) in cert.closure.iter().zip(&SUFFICIENT_PAIRS) {
        if pw.pair != pair_text(pair) {
            return Err(fail(format!(
                "condition (1): expected pair {}",
                pair_text(pair)
            )));
        }
        if pw.word.evaluate(&gens) != pw.element {
            return Err(fail(format!(
                "condition (1): word {} does not evaluate to the element for {}",
                pw.word, pw.pair
            )));
        }
        let (u, v): (BinaryWord, BinaryWord) = (pair.0.parse()?, pair.1.parse()?);
        if !pw.element.has_pair_of_branches(&u, &v) {
            return Err(fail(format!(
                "condition (1): element lacks the pair {}",
                pw.pair
            )));
        }
    }

    // Canonical form.
    let rebuilt = rebuild(cert)?;
    let mismatch = [
        ("abelian witness", cert.abelian != rebuilt.abelian),
        ("slope break", cert.slope_break != rebuilt.slope_break),
        ("endpoint exponents", cert.conj != rebuilt.conj),
        ("closure words", cert.closure != rebuilt.closure),
    ]
    .into_iter()
    .find(|(_, differs)| *differs);
    if let Some((field, _)) = mismatch {
        return Err(fail(format!("{field} is not in canonical form")));
    }
    Ok(())
}

fn rebuild(cert: &GenerationCertificate) -> Result<GenerationCertificate> {
    let generators = cert.generators.clone();
    let images = cert.abelian.images.clone();
    let witness = abelian_surjectivity(&images)
        .ok_or_else(|| fail("condition (2): abelian images do not generate Z^2"))?;
    let alpha = cert.h.evaluate(&Dyadic::new(1, 1));
    let conj = conj_witness(&cert.g).map_err(|e| fail(e.to_string()))?;
    let (w1, w2) = closure_words(&conj);
    let words = [
        ProvenanceWord::letter(Generator::A),
        ProvenanceWord::letter(Generator::A),
        ProvenanceWord::letter(Generator::A),
        w1,
        w2,
    ];
    let gens = generators.as_array();
    let closure = SUFFICIENT_PAIRS
        .iter()
        .zip(words)
        .map(|(&pair, word)| PairWitness {
            pair: pair_text(pair),
            element: word.evaluate(&gens),
            word,
        })
        .collect();
    Ok(GenerationCertificate {
        seed: cert.seed,
        h: cert.h.clone(),
        g: cert.g.clone(),
        generators,
        abelian: AbelianSection { images, witness },
        slope_break: SlopeBreak {
            generator: Generator::B,
            alpha,
        },
        conj,
        closure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_break_examples() {
        let half = Dyadic::new(1, 1);
        assert_eq!(
            slope_break_cert(&TreeDiagram::x1(), None),
            Some(half.clone())
        );
        assert_eq!(slope_break_cert(&TreeDiagram::identity(), None), None);
        let b = TreeDiagram::x1().conjugate(&TreeDiagram::x0());
        let alpha = TreeDiagram::x0().evaluate(&half);
        assert_eq!(alpha, Dyadic::new(3, 2));
        assert_eq!(slope_break_cert(&b, None), Some(alpha));
    }

    #[test]
    fn trivial_conjugators() {
        let id = TreeDiagram::identity();
        let cert = invariable_generation_cert(&id, &id).unwrap();
        assert_eq!(cert.generators.b, TreeDiagram::x1());
        assert_eq!(cert.slope_break.alpha, Dyadic::new(1, 1));
        assert!(verify_generation_certificate(&cert).is_ok());
    }

    #[test]
    fn x1_and_x0_conjugators() {
        let cert = invariable_generation_cert(&TreeDiagram::x1(), &TreeDiagram::x0()).unwrap();
        assert!(verify_generation_certificate(&cert).is_ok());
    }

    #[test]
    fn tampering_is_detected() {
        let id = TreeDiagram::identity();
        let cert = invariable_generation_cert(&id, &id).unwrap();

        let mut bad = cert.clone();
        bad.slope_break.alpha = Dyadic::new(3, 2);
        assert!(verify_generation_certificate(&bad).is_err());

        let mut bad = cert.clone();
        bad.closure[3].word = "C^2 A'^3".parse().unwrap();
        assert!(verify_generation_certificate(&bad).is_err());

        let mut bad = cert;
        bad.seed = Some(1);
        assert!(verify_generation_certificate(&bad).is_err());
    }

    #[test]
    fn seeded_certificates_verify() {
        for seed in 0..5 {
            let cert = seeded_generation_cert(seed).unwrap();
            assert_eq!(cert.seed, Some(seed));
            assert!(verify_generation_certificate(&cert).is_ok());
        }
    }

    #[test]
    fn rejects_non_f_conjugators() {
        let swap: TreeDiagram = "0 -> 1\n1 -> 0".parse().unwrap();
        assert!(invariable_generation_cert(&swap, &TreeDiagram::identity()).is_err());
    }
}
