//! Exact computation in Thompson's groups `F ⊆ T ⊆ V` through tree-diagrams.
//!
//! Elements are reduced tree-diagrams ([`diagram::TreeDiagram`]) acting on
//! dyadic points of the unit interval and the circle. Products compose
//! **left to right**: `a.mul(&b)` applies `a` first, then `b`, and
//! conjugation is `a^g = g⁻¹ a g`.
//!
//! On top of the element arithmetic, [`fgen`] builds machine-checkable
//! certificates that `{x₀, x₁ʰ, (x₀x₁)ᵍ}` generates `F` for arbitrary
//! conjugators, and [`vdyn`] builds wandering-interval and ping-pong
//! certificates for elements of `T` and `V`. Every certificate serializes
//! through [`format`] and can be re-verified from the file alone.

pub mod diagram;
pub mod dyadic;
pub mod error;
pub mod fgen;
pub mod format;
pub mod vdyn;

pub use diagram::{ElementClass, TreeDiagram};
pub use dyadic::{BinaryWord, Dyadic, DyadicInterval, RegionSet};
pub use error::{Error, Result};
