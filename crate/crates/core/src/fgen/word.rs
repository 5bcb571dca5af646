use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::TreeDiagram;
use crate::error::Error;

/// The three generators of `X = {x₀, x₁ʰ, (x₀x₁)ᵍ}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    /// `x₀`
    A,
    /// `x₁ʰ`
    B,
    /// `(x₀x₁)ᵍ`
    C,
}

impl Generator {
    fn index(self) -> usize {
        match self {
            Generator::A => 0,
            Generator::B => 1,
            Generator::C => 2,
        }
    }
}

/// A word over `A, B, C` and their inverses `A', B', C'`, stored as
/// syllables `(generator, nonzero exponent)` with no two adjacent
/// syllables on the same generator.
///
/// Text form: space separated `X`, `X'`, `X^k` or `X'^k` tokens with
/// `k ≥ 2`; the empty word is `e`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ProvenanceWord {
    syllables: Vec<(Generator, i64)>,
}

impl ProvenanceWord {
    pub fn empty() -> Self {
        ProvenanceWord::default()
    }

    pub fn letter(g: Generator) -> Self {
        ProvenanceWord::power(g, 1)
    }

    pub fn power(g: Generator, k: i64) -> Self {
        ProvenanceWord::empty().then(g, k)
    }

    /// Appends `g^k`, merging with the last syllable.
    pub fn then(mut self, g: Generator, k: i64) -> Self {
        if k == 0 {
            return self;
        }
        match self.syllables.last_mut() {
            Some((last, e)) if *last == g => {
                *e += k;
                if *e == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, k)),
        }
        self
    }

    pub fn syllables(&self) -> &[(Generator, i64)] {
        &self.syllables
    }

    /// Multiplies the word out, left to right.
    pub fn evaluate(&self, generators: &[TreeDiagram; 3]) -> TreeDiagram {
        self.syllables
            .iter()
            .fold(TreeDiagram::identity(), |acc, (g, k)| {
                acc.mul(&generators[g.index()].pow(*k))
            })
    }
}

impl fmt::Display for ProvenanceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (i, (g, k)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g:?}")?;
            if *k < 0 {
                f.write_str("'")?;
            }
            if k.unsigned_abs() > 1 {
                write!(f, "^{}", k.unsigned_abs())?;
            }
        }
        Ok(())
    }
}

/// Strict: only the canonical text form is accepted.
impl FromStr for ProvenanceWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "e" {
            return Ok(ProvenanceWord::empty());
        }
        let mut word = ProvenanceWord::empty();
        let mut column = 1;
        for token in s.split(' ') {
            let err = |msg: &str| Error::parse(1, column, format!("{msg} in word {s:?}"));
            let mut chars = token.chars();
            let g = match chars.next() {
                Some('A') => Generator::A,
                Some('B') => Generator::B,
                Some('C') => Generator::C,
                _ => return Err(err("expected A, B or C")),
            };
            let mut rest = chars.as_str();
            let sign = if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                -1
            } else {
                1
            };
            let k: i64 = match rest.strip_prefix('^') {
                None if rest.is_empty() => 1,
                Some(digits) if !digits.starts_with('0') => match digits.parse::<i64>() {
                    Ok(k) if k >= 2 => k,
                    _ => return Err(err("exponents are integers of at least 2")),
                },
                _ => return Err(err("unexpected characters")),
            };
            if word.syllables.last().is_some_and(|(last, _)| *last == g) {
                return Err(err("adjacent syllables must use different generators"));
            }
            word = word.then(g, sign * k);
            column += token.chars().count() + 1;
        }
        Ok(word)
    }
}

impl Serialize for ProvenanceWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProvenanceWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::dyadic::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w = ProvenanceWord::power(Generator::A, -2)
            .then(Generator::C, 3)
            .then(Generator::A, -1);
        assert_eq!(w.to_string(), "A'^2 C^3 A'");
        assert_eq!(w.to_string().parse::<ProvenanceWord>().unwrap(), w);
        assert_eq!(
            "e".parse::<ProvenanceWord>().unwrap(),
            ProvenanceWord::empty()
        );
    }

    #[test]
    fn rejects_non_canonical_text() {
        for bad in ["A^1", "A A", "A^02", "D", "A^-2", "", "A  B", "A'^0"] {
            assert!(bad.parse::<ProvenanceWord>().is_err(), "{bad}");
        }
    }

    #[test]
    fn merging_cancels() {
        let w = ProvenanceWord::letter(Generator::B).then(Generator::B, -1);
        assert_eq!(w, ProvenanceWord::empty());
    }

    #[test]
    fn evaluates_left_to_right() {
        let gens = [
            TreeDiagram::x0(),
            TreeDiagram::x1(),
            TreeDiagram::identity(),
        ];
        let w: ProvenanceWord = "A B'^2".parse().unwrap();
        let expected = TreeDiagram::x0().mul(&TreeDiagram::x1().pow(-2));
        assert_eq!(w.evaluate(&gens), expected);
    }
}
