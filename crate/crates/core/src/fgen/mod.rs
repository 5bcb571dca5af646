//! Generation certificates for `F`.
//!
//! A subgroup `H ≤ F` equals `F` when (1) `Cl(H) = F`, (2) `H[F,F] = F` and
//! (3) some element of `H` fixes a dyadic `α ∈ (0,1)` with slope `1` on the
//! left and `2` on the right. This module verifies the three premises
//! exactly for `H = ⟨x₀, x₁ʰ, (x₀x₁)ᵍ⟩`; condition (1) is witnessed by the
//! five sufficient branch pairs `00→0, 1→11, 01→10, 010→10, 011→10`.

mod abelian;
mod branches;
mod cert;
mod word;

pub use abelian::{abelian_surjectivity, abelianization, AbelianImage, LatticeWitness};
pub use branches::{
    closure_witnesses, closure_words, conj_witness, endpoint_exponents, suffice_check, ConjWitness,
    EndpointExponents, SufficeReport, SUFFICIENT_PAIRS,
};
pub use cert::{
    invariable_generation_cert, is_slope_break, sample_conjugators, seeded_generation_cert,
    slope_break_cert, verify_generation_certificate, AbelianSection, GenerationCertificate,
    Generators, PairWitness, SlopeBreak, SAMPLE_MAX_LEAVES,
};
pub use word::{Generator, ProvenanceWord};

use crate::diagram::{ElementClass, TreeDiagram};
use crate::error::{Error, Result};

/// `x₀x₁ = {00 → 0, 010 → 10, 011 → 110, 1 → 111}`.
pub fn h_element() -> TreeDiagram {
    TreeDiagram::x0().mul(&TreeDiagram::x1())
}

fn require_f(g: &TreeDiagram) -> Result<()> {
    match g.class() {
        ElementClass::F => Ok(()),
        other => Err(Error::NotInF(other.to_string())),
    }
}
