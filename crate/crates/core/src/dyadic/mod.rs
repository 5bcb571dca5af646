//! Exact dyadic arithmetic: numbers, binary words, and intervals on the
//! unit interval and the circle.

mod interval;
mod number;
mod region;
mod word;

pub use interval::{interval_relations, DyadicInterval};
pub use number::{signum, Dyadic};
pub use region::{parse_arc, RegionSet, Relation, Segment};
pub use word::{is_complete_prefix_code, kraft_complete, BinaryWord};

/// `[u]` when `closed`, else `(u]`.
pub fn word_to_interval(u: &BinaryWord, closed: bool) -> DyadicInterval {
    DyadicInterval::from_word(u, closed)
}

/// Complement on the circle.
pub fn region_complement(r: &RegionSet) -> RegionSet {
    r.complement()
}

/// Parses `s` and rejects any spelling other than the canonical one, so
/// that serialized documents are bit-exact.
pub(crate) fn parse_canonical<T>(s: &str) -> Result<T, crate::error::Error>
where
    T: std::str::FromStr<Err = crate::error::Error> + std::fmt::Display,
{
    let value: T = s.parse()?;
    let canonical = value.to_string();
    if canonical != s {
        return Err(crate::error::Error::parse(
            1,
            1,
            format!("{s:?} is not in canonical form {canonical:?}"),
        ));
    }
    Ok(value)
}
