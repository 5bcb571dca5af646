use std::fmt;
use std::str::FromStr;

use super::{BinaryWord, Dyadic};
use crate::error::Error;

/// One component of a [`RegionSet`], in linear coordinates on `[0, 1)`.
///
/// The circle point `0 ≡ 1` is always stored as `0`, so `hi == 1` only
/// occurs with an open right end.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Segment {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }
}

/// How two sets sit relative to each other.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Disjoint,
    Subset,
    Superset,
    Equal,
    Overlap,
}

/// A finite union of intervals on the circle `S¹ = [0, 1)` with `0 ≡ 1`.
///
/// Canonical: components sorted, pairwise disjoint, and no two of them can
/// be merged into one interval. Equality of canonical sets is equality of
/// point sets.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RegionSet {
    segs: Vec<Segment>,
}

impl RegionSet {
    pub fn empty() -> Self {
        RegionSet::default()
    }

    pub fn full() -> Self {
        RegionSet {
            segs: vec![Segment {
                lo: Dyadic::zero(),
                hi: Dyadic::one(),
                lo_closed: true,
                hi_closed: false,
            }],
        }
    }

    pub fn point(x: &Dyadic) -> Self {
        let x = x.frac();
        RegionSet {
            segs: vec![Segment {
                lo: x.clone(),
                hi: x,
                lo_closed: true,
                hi_closed: true,
            }],
        }
    }

    /// The interval between `lo` and `hi` on `[0, 1]`; a closed right end at
    /// `1` contributes the circle point `0`.
    pub fn linear(lo: &Dyadic, hi: &Dyadic, lo_closed: bool, hi_closed: bool) -> Self {
        assert!(
            Dyadic::zero() <= *lo && lo <= hi && *hi <= Dyadic::one(),
            "linear interval [{lo}, {hi}] outside [0, 1]"
        );
        let mut segs = Vec::with_capacity(2);
        if lo == hi {
            if lo_closed && hi_closed {
                return RegionSet::point(lo);
            }
            return RegionSet::empty();
        }
        let one = Dyadic::one();
        if *hi == one && hi_closed {
            segs.push(Segment {
                lo: Dyadic::zero(),
                hi: Dyadic::zero(),
                lo_closed: true,
                hi_closed: true,
            });
        }
        segs.push(Segment {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_closed,
            hi_closed: hi_closed && *hi != one,
        });
        RegionSet::from_segments(segs)
    }

    /// The arc running counterclockwise from `a` to `b`.
    ///
    /// Its length is `(b - a) mod 1`, except that a nonzero integer
    /// difference means a full turn. `a == b` is only allowed for a closed
    /// singleton.
    pub fn arc(a: &Dyadic, b: &Dyadic, lo_closed: bool, hi_closed: bool) -> Result<Self, Error> {
        let start = a.frac();
        let diff = b - a;
        let mut len = diff.frac();
        if len.is_zero() {
            if diff.is_zero() {
                if lo_closed && hi_closed {
                    return Ok(RegionSet::point(&start));
                }
                return Err(Error::InvalidInterval(format!("empty arc at {a}")));
            }
            len = Dyadic::one();
        }
        let end = &start + &len;
        let one = Dyadic::one();
        if end <= one {
            Ok(RegionSet::linear(&start, &end, lo_closed, hi_closed))
        } else {
            let wrapped = &end - &one;
            Ok(
                RegionSet::linear(&start, &one, lo_closed, false).union(&RegionSet::linear(
                    &Dyadic::zero(),
                    &wrapped,
                    true,
                    hi_closed,
                )),
            )
        }
    }

    /// Union of linear pieces `(lo, hi, lo_closed, hi_closed)` on `[0, 1]`,
    /// with the same convention at `1` as [`RegionSet::linear`].
    pub fn from_linear_pieces(pieces: Vec<(Dyadic, Dyadic, bool, bool)>) -> Self {
        let one = Dyadic::one();
        let mut segs = Vec::with_capacity(pieces.len() + 1);
        for (lo, hi, lc, hc) in pieces {
            if hc && hi == one {
                segs.push(Segment {
                    lo: Dyadic::zero(),
                    hi: Dyadic::zero(),
                    lo_closed: true,
                    hi_closed: true,
                });
                if lo == one {
                    continue;
                }
            }
            let hc = hc && hi != one;
            segs.push(Segment {
                lo,
                hi,
                lo_closed: lc,
                hi_closed: hc,
            });
        }
        RegionSet::from_segments(segs)
    }

    /// Canonicalizes arbitrary segments lying in `[0, 1)`.
    pub fn from_segments(mut segs: Vec<Segment>) -> Self {
        segs.retain(|s| s.lo < s.hi || (s.lo == s.hi && s.lo_closed && s.hi_closed));
        segs.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            if let Some(cur) = out.last_mut() {
                let touches = s.lo < cur.hi || (s.lo == cur.hi && (cur.hi_closed || s.lo_closed));
                if touches {
                    if s.lo == cur.lo {
                        cur.lo_closed |= s.lo_closed;
                    }
                    if s.hi > cur.hi {
                        cur.hi = s.hi;
                        cur.hi_closed = s.hi_closed;
                    } else if s.hi == cur.hi {
                        cur.hi_closed |= s.hi_closed;
                    }
                    continue;
                }
            }
            out.push(s);
        }
        RegionSet { segs: out }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == RegionSet::full()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        let x = x.frac();
        self.segs.iter().any(|s| s.contains(&x))
    }

    pub fn union(&self, other: &RegionSet) -> RegionSet {
        let mut segs = self.segs.clone();
        segs.extend(other.segs.iter().cloned());
        RegionSet::from_segments(segs)
    }

    pub fn complement(&self) -> RegionSet {
        let mut out = Vec::with_capacity(self.segs.len() + 1);
        let mut cursor = Dyadic::zero();
        let mut cursor_closed = true;
        for s in &self.segs {
            out.push(Segment {
                lo: cursor,
                hi: s.lo.clone(),
                lo_closed: cursor_closed,
                hi_closed: !s.lo_closed,
            });
            cursor = s.hi.clone();
            cursor_closed = !s.hi_closed;
        }
        out.push(Segment {
            lo: cursor,
            hi: Dyadic::one(),
            lo_closed: cursor_closed,
            hi_closed: false,
        });
        RegionSet::from_segments(out)
    }

    pub fn intersection(&self, other: &RegionSet) -> RegionSet {
        if self.is_empty() || other.is_empty() {
            return RegionSet::empty();
        }
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &RegionSet) -> RegionSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &RegionSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &RegionSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn relation(&self, other: &RegionSet) -> Relation {
        let common = self.intersection(other);
        if common.is_empty() {
            Relation::Disjoint
        } else if self == other {
            Relation::Equal
        } else if common == *self {
            Relation::Subset
        } else if common == *other {
            Relation::Superset
        } else {
            Relation::Overlap
        }
    }

    /// Components as circle arcs `(lo, hi, lo_closed, hi_closed)`, with the
    /// component through `0` reported once as an arc whose `hi` exceeds 1.
    pub fn arcs(&self) -> Vec<(Dyadic, Dyadic, bool, bool)> {
        let mut arcs: Vec<_> = self
            .segs
            .iter()
            .map(|s| (s.lo.clone(), s.hi.clone(), s.lo_closed, s.hi_closed))
            .collect();
        if arcs.len() >= 2 {
            let first = &self.segs[0];
            let last = &self.segs[self.segs.len() - 1];
            if first.lo.is_zero() && first.lo_closed && last.hi == Dyadic::one() {
                let merged = (
                    last.lo.clone(),
                    &first.hi + &Dyadic::one(),
                    last.lo_closed,
                    first.hi_closed,
                );
                arcs.pop();
                arcs.remove(0);
                arcs.push(merged);
            }
        }
        arcs
    }

    /// Total length (Lebesgue measure).
    pub fn measure(&self) -> Dyadic {
        self.segs
            .iter()
            .fold(Dyadic::zero(), |acc, s| &acc + &(&s.hi - &s.lo))
    }
}

fn fmt_arc(f: &mut fmt::Formatter<'_>, arc: &(Dyadic, Dyadic, bool, bool)) -> fmt::Result {
    let (lo, hi, lc, hc) = arc;
    write!(
        f,
        "{}{},{}{}",
        if *lc { '[' } else { '(' },
        lo,
        hi,
        if *hc { ']' } else { ')' }
    )
}

/// Text form: `empty`, `S1`, or arcs like `(1/2^2,1/2^1]` joined by ` U `.
impl fmt::Display for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        if self.is_full() {
            return f.write_str("S1");
        }
        for (i, arc) in self.arcs().iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            fmt_arc(f, arc)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegionSet({self})")
    }
}

/// Parses one arc: a word interval `[u]`/`(u]` or `<a,b>` with any of the
/// four bracket combinations.
pub fn parse_arc(s: &str) -> Result<RegionSet, Error> {
    let err = |col: usize, msg: &str| Error::parse(1, col, format!("{msg} in interval {s:?}"));
    let lc = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(err(1, "expected '[' or '('")),
    };
    let hc = match s.chars().last() {
        Some(']') if s.len() >= 2 => true,
        Some(')') if s.len() >= 2 => false,
        _ => return Err(err(s.len().max(1), "expected ']' or ')'")),
    };
    let body = &s[1..s.len() - 1];
    match body.split_once(',') {
        None => {
            if !hc {
                return Err(err(s.len(), "word intervals end with ']'"));
            }
            let u: BinaryWord = body.parse().map_err(|_| err(2, "bad binary word"))?;
            Ok(super::DyadicInterval::from_word(&u, lc).to_region())
        }
        Some((a, b)) => {
            let a: Dyadic = a.parse().map_err(|_| err(2, "bad left endpoint"))?;
            let b: Dyadic = b
                .parse()
                .map_err(|_| err(body.find(',').unwrap_or(0) + 3, "bad right endpoint"))?;
            RegionSet::arc(&a, &b, lc, hc)
        }
    }
}

impl FromStr for RegionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "empty" => return Ok(RegionSet::empty()),
            "S1" => return Ok(RegionSet::full()),
            _ => {}
        }
        let mut out = RegionSet::empty();
        for part in s.split(" U ") {
            out = out.union(&parse_arc(part)?);
        }
        Ok(out)
    }
}

impl serde::Serialize for RegionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RegionSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::dyadic::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}
