//! Wandering sets, conjugation into prescribed arcs, and ping-pong for
//! countable families in `T` and `V`.
//!
//! An element of infinite order is certified by a revealing pair: a branch
//! `v` whose orbit returns into a proper sub-branch `v·w_k`, so any other
//! sub-branch `(v·w_j]` is wandering. A periodic element is certified by
//! a point, its period and a small left neighbourhood.

mod order;
mod pingpong;
mod transfer;
mod wandering;

pub use order::{detect_order, revealing_search, Budgets, OrderResult, RevealingEvidence};
pub use pingpong::{
    build_pingpong, format_word, free_product_test, orbit_bfs, orbit_certificate,
    orbit_lemma_check, standard_instance, syllables, t_intervals, v_intervals, verify_orbit,
    verify_pingpong, FreeProductReport, Letter, OrbitCertificate, OrbitPoint, PingPongInstance,
};
pub use transfer::{
    avoid_conjugator, cover_arc, transitive_map, verify_transferred, TransferredCertificate,
};
pub use wandering::{
    brute_force, periodic_evidence, verify_wandering, wandering_interval, Evidence,
    PeriodicEvidence, WanderingCertificate, WanderingKind,
};
