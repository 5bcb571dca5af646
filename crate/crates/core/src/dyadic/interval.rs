use std::fmt;
use std::str::FromStr;

use super::{BinaryWord, Dyadic, RegionSet, Relation};
use crate::error::Error;

/// A single interval on the unit circle with dyadic endpoints.
///
/// General intervals run counterclockwise from the first endpoint to the
/// second and may pass through `0 ≡ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DyadicInterval {
    /// `[u] = [.u, .u + 2^-|u|]`
    ClosedWord(BinaryWord),
    /// `(u] = (.u, .u + 2^-|u|]`
    HalfOpenWord(BinaryWord),
    /// `(a, b]`
    HalfOpen(Dyadic, Dyadic),
    /// `(a, b)`
    Open(Dyadic, Dyadic),
}

impl DyadicInterval {
    pub fn from_word(u: &BinaryWord, closed: bool) -> Self {
        if closed {
            DyadicInterval::ClosedWord(u.clone())
        } else {
            DyadicInterval::HalfOpenWord(u.clone())
        }
    }

    pub fn half_open(a: Dyadic, b: Dyadic) -> Result<Self, Error> {
        RegionSet::arc(&a, &b, false, true)?;
        Ok(DyadicInterval::HalfOpen(a, b))
    }

    pub fn open(a: Dyadic, b: Dyadic) -> Result<Self, Error> {
        if RegionSet::arc(&a, &b, false, false)?.is_empty() {
            return Err(Error::InvalidInterval(format!("({a},{b}) is empty")));
        }
        Ok(DyadicInterval::Open(a, b))
    }

    /// Left and right endpoints as written.
    pub fn endpoints(&self) -> (Dyadic, Dyadic) {
        match self {
            DyadicInterval::ClosedWord(u) | DyadicInterval::HalfOpenWord(u) => {
                (u.left_endpoint(), u.right_endpoint())
            }
            DyadicInterval::HalfOpen(a, b) | DyadicInterval::Open(a, b) => (a.clone(), b.clone()),
        }
    }

    pub fn word(&self) -> Option<&BinaryWord> {
        match self {
            DyadicInterval::ClosedWord(u) | DyadicInterval::HalfOpenWord(u) => Some(u),
            _ => None,
        }
    }

    pub fn to_region(&self) -> RegionSet {
        match self {
            DyadicInterval::ClosedWord(u) => {
                RegionSet::linear(&u.left_endpoint(), &u.right_endpoint(), true, true)
            }
            DyadicInterval::HalfOpenWord(u) => {
                RegionSet::linear(&u.left_endpoint(), &u.right_endpoint(), false, true)
            }
            DyadicInterval::HalfOpen(a, b) => {
                RegionSet::arc(a, b, false, true).expect("validated on construction")
            }
            DyadicInterval::Open(a, b) => {
                RegionSet::arc(a, b, false, false).expect("validated on construction")
            }
        }
    }

    /// The open interval with the same endpoints.
    pub fn interior(&self) -> DyadicInterval {
        let (a, b) = self.endpoints();
        DyadicInterval::Open(a, b)
    }

    pub fn relation(&self, other: &DyadicInterval) -> Relation {
        self.to_region().relation(&other.to_region())
    }
}

pub fn interval_relations(i: &DyadicInterval, j: &DyadicInterval) -> Relation {
    i.relation(j)
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicInterval::ClosedWord(u) => write!(f, "[{u}]"),
            DyadicInterval::HalfOpenWord(u) => write!(f, "({u}]"),
            DyadicInterval::HalfOpen(a, b) => write!(f, "({a},{b}]"),
            DyadicInterval::Open(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Accepts exactly `[u]`, `(u]`, `(a,b]` and `(a,b)`.
impl FromStr for DyadicInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |col: usize, msg: &str| Error::parse(1, col, format!("{msg} in interval {s:?}"));
        if s.len() < 2 {
            return Err(err(1, "too short"));
        }
        let open_left = match &s[..1] {
            "[" => false,
            "(" => true,
            _ => return Err(err(1, "expected '[' or '('")),
        };
        let closing = &s[s.len() - 1..];
        let body = &s[1..s.len() - 1];
        match (body.split_once(','), open_left, closing) {
            (None, _, "]") => {
                let u: BinaryWord = body.parse().map_err(|_| err(2, "bad binary word"))?;
                Ok(DyadicInterval::from_word(&u, !open_left))
            }
            (Some((a, b)), true, end @ ("]" | ")")) => {
                let a: Dyadic = a.parse().map_err(|_| err(2, "bad left endpoint"))?;
                let b: Dyadic = b
                    .parse()
                    .map_err(|_| err(a.to_string().len() + 3, "bad right endpoint"))?;
                if end == "]" {
                    DyadicInterval::half_open(a, b)
                } else {
                    DyadicInterval::open(a, b)
                }
            }
            _ => Err(err(s.len(), "unsupported bracket combination")),
        }
    }
}

impl serde::Serialize for DyadicInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for DyadicInterval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::dyadic::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_intervals() {
        let i = DyadicInterval::from_word(&w("10"), true);
        assert_eq!(i.endpoints(), (Dyadic::new(1, 1), Dyadic::new(3, 2)));
        let whole = DyadicInterval::from_word(&w(""), true);
        assert_eq!(whole.endpoints(), (Dyadic::zero(), Dyadic::one()));
        assert!(whole.to_region().is_full());
        let j = DyadicInterval::from_word(&w("011"), false);
        assert_eq!(j.endpoints(), (Dyadic::new(3, 3), Dyadic::new(1, 1)));
        assert!(!j.to_region().contains(&Dyadic::new(3, 3)));
        assert!(j.to_region().contains(&Dyadic::new(1, 1)));
    }

    #[test]
    fn last_word_interval_contains_zero() {
        let i = DyadicInterval::from_word(&w("11"), false);
        assert!(i.to_region().contains(&Dyadic::zero()));
        assert_eq!(i.to_region().measure(), Dyadic::new(1, 2));
    }

    #[test]
    fn grammar() {
        for s in ["(011]", "[011]", "(3/2^3,1/2^1]", "(3/2^2,9/2^3)", "[]"] {
            let i: DyadicInterval = s.parse().unwrap();
            assert_eq!(i.to_string(), s);
        }
        for bad in [
            "[3/2^3,1/2^1]",
            "(011)",
            "(3/8,1/2]",
            "011",
            "(1/2^1,1/2^1]",
        ] {
            assert!(bad.parse::<DyadicInterval>().is_err(), "{bad}");
        }
    }

    #[test]
    fn relation_examples() {
        let p = |s: &str| s.parse::<DyadicInterval>().unwrap();
        assert_eq!(
            interval_relations(&p("(0/2^0,1/2^2]"), &p("(1/2^2,1/2^1]")),
            Relation::Disjoint
        );
        assert_eq!(interval_relations(&p("(00]"), &p("(0]")), Relation::Subset);
        assert_eq!(
            interval_relations(&p("(1/2^3,3/2^3]"), &p("(1/2^2,1/2^1]")),
            Relation::Overlap
        );
    }
}
