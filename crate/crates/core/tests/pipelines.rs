use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson::diagram::{random_element, random_nontrivial};
use thompson::fgen::{
    closure_witnesses, conj_witness, endpoint_exponents, invariable_generation_cert,
    seeded_generation_cert, slope_break_cert, suffice_check, verify_generation_certificate,
    Generator, ProvenanceWord,
};
use thompson::format::{verify_document, Document};
use thompson::vdyn::{
    avoid_conjugator, build_pingpong, detect_order, free_product_test, orbit_bfs,
    orbit_certificate, orbit_lemma_check, standard_instance, transitive_map, verify_orbit,
    verify_pingpong, verify_transferred, wandering_interval, Budgets, Evidence, OrderResult,
    WanderingKind,
};
use thompson::{Dyadic, DyadicInterval, ElementClass, Error, RegionSet, TreeDiagram};

fn iv(s: &str) -> DyadicInterval {
    s.parse().unwrap()
}

fn region(s: &str) -> RegionSet {
    s.parse().unwrap()
}

#[test]
fn conj_witnesses_up_to_fourteen_leaves() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let g = random_element(&mut rng, 14, ElementClass::F);
        let w = conj_witness(&g).unwrap();
        assert!(w.check_pairs());
        assert!(w.exponents.holds_for(&g));
        closure_witnesses(&w).unwrap();
    }
}

#[test]
fn x1_endpoint_exponents() {
    let e = endpoint_exponents(&TreeDiagram::x1()).unwrap();
    assert_eq!((e.a, e.b, e.c, e.d), (1, 1, 2, 3));
}

#[test]
fn non_f_inputs_rejected() {
    let swap: TreeDiagram = "0 -> 1\n1 -> 0".parse().unwrap();
    assert!(matches!(conj_witness(&swap), Err(Error::NotInF(_))));
    assert!(matches!(
        invariable_generation_cert(&swap, &TreeDiagram::identity()),
        Err(Error::NotInF(_))
    ));
}

#[test]
fn x0_alone_is_inconclusive() {
    let report = suffice_check(&[(TreeDiagram::x0(), ProvenanceWord::letter(Generator::A))]);
    assert_eq!(
        report.witnesses[..3].iter().filter(|w| w.is_some()).count(),
        3
    );
    assert_eq!(report.verdict(), "inconclusive");
}

#[test]
fn identity_conjugators_certify_the_standard_generators() {
    let cert =
        invariable_generation_cert(&TreeDiagram::identity(), &TreeDiagram::identity()).unwrap();
    assert_eq!(cert.slope_break.alpha, Dyadic::new(1, 1));
    assert_eq!(cert.generators.b, TreeDiagram::x1());
    assert!(verify_generation_certificate(&cert).is_ok());
}

#[test]
fn slope_break_needs_a_fixed_point() {
    assert_eq!(slope_break_cert(&TreeDiagram::x0(), None), None);
}

#[test]
fn seeded_certificates_are_deterministic() {
    let a = Document::from(seeded_generation_cert(99).unwrap()).to_json();
    let b = Document::from(seeded_generation_cert(99).unwrap()).to_json();
    assert_eq!(a, b);
    assert_ne!(
        a,
        Document::from(seeded_generation_cert(100).unwrap()).to_json()
    );
}

#[test]
fn revealing_evidence_implies_infinite_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let g = random_nontrivial(&mut rng, 8, ElementClass::V);
        if let OrderResult::InfiniteOrder(ev) = detect_order(&g, &Budgets::default()) {
            assert!(ev.verify(&g).is_ok());
            let mut p = TreeDiagram::identity();
            for _ in 0..50 {
                p = p.mul(&g);
                assert!(!p.is_identity());
            }
        }
    }
}

#[test]
fn periodic_t_elements_have_full_local_period() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut seen = 0;
    for _ in 0..200 {
        let g = random_nontrivial(&mut rng, 8, ElementClass::T);
        let cert = wandering_interval(&g, &Budgets::default()).unwrap();
        if let Evidence::Periodic(ev) = &cert.evidence {
            seen += 1;
            assert_eq!(ev.m, ev.order);
            assert_eq!(cert.kind, WanderingKind::Wandering);
        }
    }
    assert!(seen > 0);
}

#[test]
fn transitive_map_examples() {
    let g = transitive_map(&iv("(0/2^0,1/2^1)"), &iv("(0/2^0,1/2^2)")).unwrap();
    assert!(g.has_pair_of_branches(&"0".parse().unwrap(), &"00".parse().unwrap()));
    assert_eq!(
        g.map_region(&region("(0/2^0,1/2^1)")),
        region("(0/2^0,1/2^2)")
    );
    let wrap = iv("(3/2^2,9/2^3)");
    let g = transitive_map(&iv("(1/2^2,1/2^1)"), &wrap).unwrap();
    assert!(g.class() <= ElementClass::T);
    assert_eq!(g.map_region(&region("(1/2^2,1/2^1)")), wrap.to_region());
}

#[test]
fn avoid_conjugator_examples() {
    let quarter_complement = region("[1/2^2,1/2^0]");
    let cert =
        avoid_conjugator(&TreeDiagram::x0(), &quarter_complement, &Budgets::default()).unwrap();
    assert_eq!(cert.kind, WanderingKind::Wandering);
    assert!(verify_transferred(&cert, 50).is_ok());
    assert!(matches!(
        avoid_conjugator(
            &TreeDiagram::identity(),
            &quarter_complement,
            &Budgets::default()
        ),
        Err(Error::Identity)
    ));
    assert!(avoid_conjugator(&TreeDiagram::x0(), &RegionSet::full(), &Budgets::default()).is_err());
}

#[test]
fn pingpong_premise_to_power_25() {
    let inst = standard_instance(ElementClass::T, 4, &Budgets::default()).unwrap();
    assert!(verify_pingpong(&inst, 25).is_ok());
    let gs = inst.elements();
    assert!(!gs[0].mul(&gs[1]).mul(&gs[0].inverse()).is_identity());
    let report = free_product_test(&inst, 8, 200, 3).unwrap();
    assert_eq!(
        (report.words, report.identities, report.inclusion_failures),
        (200, 0, 0)
    );
}

#[test]
fn tampered_pingpong_rejected() {
    let mut inst = standard_instance(ElementClass::T, 3, &Budgets::default()).unwrap();
    inst.intervals.swap(0, 1);
    assert!(verify_pingpong(&inst, 10).is_err());
    let mut inst = standard_instance(ElementClass::T, 3, &Budgets::default()).unwrap();
    inst.class = ElementClass::V;
    assert!(verify_pingpong(&inst, 10).is_err());
}

#[test]
fn overlapping_intervals_rejected() {
    let reps = [TreeDiagram::x0(), TreeDiagram::x1()];
    let r = build_pingpong(
        &reps,
        &[iv("(0/2^0,1/2^1)"), iv("(1/2^2,3/2^2)")],
        &Budgets::default(),
    );
    assert!(matches!(r, Err(Error::InvalidInterval(_))));
}

#[test]
fn orbit_examples() {
    let o = orbit_bfs(&[TreeDiagram::x0()], &Dyadic::zero(), 3);
    assert_eq!(o.len(), 1);
    let inst = standard_instance(ElementClass::V, 3, &Budgets::default()).unwrap();
    let o = orbit_bfs(&inst.elements(), &Dyadic::zero(), 0);
    assert!(orbit_lemma_check(&inst, &o));
    let cert = orbit_certificate(inst, 4).unwrap();
    assert!(cert.orbit.iter().all(|p| p.point < Dyadic::new(1, 2)));
    assert!(verify_orbit(&cert, 10).is_ok());
}

#[test]
fn every_document_kind_round_trips() {
    let budgets = Budgets::default();
    let docs: Vec<Document> = vec![
        seeded_generation_cert(1).unwrap().into(),
        wandering_interval(&TreeDiagram::x0(), &budgets)
            .unwrap()
            .into(),
        avoid_conjugator(&TreeDiagram::x0(), &region("[1/2^2,1/2^0]"), &budgets)
            .unwrap()
            .into(),
        standard_instance(ElementClass::T, 2, &budgets)
            .unwrap()
            .into(),
        orbit_certificate(standard_instance(ElementClass::V, 2, &budgets).unwrap(), 3)
            .unwrap()
            .into(),
    ];
    for doc in docs {
        let text = doc.to_json();
        let back = Document::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(
            verify_document(&back, 20).is_ok(),
            "{}",
            doc.certificate.kind()
        );
    }
}
