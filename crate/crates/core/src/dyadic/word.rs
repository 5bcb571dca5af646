use std::fmt;
use std::str::FromStr;

use super::Dyadic;
use crate::error::Error;

/// A finite word over `{0, 1}`; `false` is `0`.
///
/// Words order lexicographically with a proper prefix before its
/// extensions, which for a prefix code is the left-to-right order of the
/// corresponding leaves.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<bool>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryWord(bits)
    }

    /// `bit` repeated `n` times, e.g. `0^a` or `1^c`.
    pub fn repeat(bit: bool, n: usize) -> Self {
        BinaryWord(vec![bit; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &BinaryWord) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    /// Comparable words label nested intervals; incomparable ones disjoint.
    pub fn comparable(&self, other: &BinaryWord) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut v = self.0.clone();
        v.push(bit);
        BinaryWord(v)
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    /// The suffix of `self` after `prefix`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &BinaryWord) -> Option<BinaryWord> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| BinaryWord(s.to_vec()))
    }

    pub fn parent(&self) -> Option<BinaryWord> {
        if self.is_empty() {
            None
        } else {
            Some(BinaryWord(self.0[..self.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn truncate(&self, len: usize) -> BinaryWord {
        BinaryWord(self.0[..len.min(self.len())].to_vec())
    }

    /// The dyadic `.u`, left endpoint of the word interval.
    pub fn left_endpoint(&self) -> Dyadic {
        let mut num = num_bigint::BigInt::from(0u8);
        for &b in &self.0 {
            num <<= 1;
            if b {
                num += 1;
            }
        }
        Dyadic::new(num, self.len() as u32)
    }

    /// `.u + 2^(-|u|)`.
    pub fn right_endpoint(&self) -> Dyadic {
        &self.left_endpoint() + &self.width()
    }

    /// `2^(-|u|)`.
    pub fn width(&self) -> Dyadic {
        Dyadic::pow2(-(self.len() as i64))
    }

    pub fn is_all(&self, bit: bool) -> bool {
        self.0.iter().all(|&b| b == bit)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(
                    1,
                    i + 1,
                    format!("unexpected {c:?} in binary word"),
                )),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

impl serde::Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::dyadic::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

/// `true` iff the words are pairwise prefix-incomparable and their Kraft
/// sum is exactly one.
pub fn kraft_complete(words: &[BinaryWord]) -> bool {
    if words.is_empty() {
        return false;
    }
    let mut sorted: Vec<&BinaryWord> = words.iter().collect();
    sorted.sort();
    // In sorted order, a prefix relation must show up between neighbours.
    if sorted.windows(2).any(|w| w[0].is_prefix_of(w[1])) {
        return false;
    }
    let sum = words
        .iter()
        .fold(Dyadic::zero(), |acc, w| &acc + &w.width());
    sum == Dyadic::one()
}

/// `true` iff the words are exactly the leaves of a full binary tree.
///
/// Checked structurally: every word is matched by a left-to-right walk that
/// descends into both children of every internal node.
pub fn is_complete_prefix_code(words: &[BinaryWord]) -> bool {
    let mut sorted: Vec<&BinaryWord> = words.iter().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != words.len() {
        return false;
    }
    let mut next = 0;
    fn walk(node: &BinaryWord, leaves: &[&BinaryWord], next: &mut usize) -> bool {
        let Some(leaf) = leaves.get(*next) else {
            return false;
        };
        if *leaf == node {
            *next += 1;
            return true;
        }
        if !node.is_proper_prefix_of(leaf) {
            return false;
        }
        walk(&node.child(false), leaves, next) && walk(&node.child(true), leaves, next)
    }
    walk(&BinaryWord::empty(), &sorted, &mut next) && next == sorted.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn prefix_relations() {
        assert!(w("0").is_prefix_of(&w("01")));
        assert!(w("").is_prefix_of(&w("1")));
        assert!(!w("01").is_prefix_of(&w("0")));
        assert!(w("01").comparable(&w("0")));
        assert!(!w("01").comparable(&w("10")));
        assert_eq!(w("0110").strip_prefix(&w("01")), Some(w("10")));
    }

    #[test]
    fn endpoints() {
        assert_eq!(w("011").left_endpoint(), Dyadic::new(3, 3));
        assert_eq!(w("10").right_endpoint(), Dyadic::new(3, 2));
        assert_eq!(w("").right_endpoint(), Dyadic::one());
    }

    #[test]
    fn code_checks() {
        let code = |s: &[&str]| s.iter().map(|x| w(x)).collect::<Vec<_>>();
        assert!(is_complete_prefix_code(&code(&["00", "01", "1"])));
        assert!(kraft_complete(&code(&["00", "01", "1"])));
        assert!(is_complete_prefix_code(&code(&[""])));
        assert!(!is_complete_prefix_code(&code(&["00", "1"])));
        assert!(!kraft_complete(&code(&["00", "1"])));
        // Kraft sum one but not prefix-free.
        assert!(!kraft_complete(&code(&["0", "00", "01"])));
        assert!(!is_complete_prefix_code(&code(&["0", "00", "01"])));
        assert!(!is_complete_prefix_code(&code(&["0", "1", "1"])));
    }

    #[test]
    fn parse_rejects_other_symbols() {
        assert!("012".parse::<BinaryWord>().is_err());
        assert_eq!("".parse::<BinaryWord>().unwrap(), BinaryWord::empty());
    }
}
