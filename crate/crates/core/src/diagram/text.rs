//! Branch-table text format.
//!
//! One pair per line, `u -> v`, in left-to-right order of source branches;
//! `σ` is implicit in the order of the targets. The empty word is written
//! `ε`. An optional first line `class: F|T|V` is checked against the class
//! derived from the table. Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;

use super::{ElementClass, TreeDiagram};
use crate::dyadic::BinaryWord;
use crate::error::Error;

const EMPTY: &str = "ε";

fn fmt_word(w: &BinaryWord) -> String {
    if w.is_empty() {
        EMPTY.to_string()
    } else {
        w.to_string()
    }
}

fn parse_word(s: &str, line: usize, column: usize) -> Result<BinaryWord, Error> {
    if s == EMPTY || s.is_empty() {
        return Ok(BinaryWord::empty());
    }
    s.parse::<BinaryWord>().map_err(|e| match e {
        Error::Parse {
            column: c, message, ..
        } => Error::parse(line, column + c - 1, message),
        other => other,
    })
}

impl TreeDiagram {
    /// The branch table, one `u -> v` string per line.
    pub fn table_lines(&self) -> Vec<String> {
        self.pairs()
            .iter()
            .map(|(u, v)| format!("{} -> {}", fmt_word(u), fmt_word(v)))
            .collect()
    }

    /// Full text with a `class:` header.
    pub fn to_text(&self) -> String {
        let mut s = format!("class: {}\n", self.class());
        for line in self.table_lines() {
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    /// Parses table lines (as produced by [`TreeDiagram::table_lines`]).
    pub fn from_lines<S: AsRef<str>>(lines: &[S]) -> Result<Self, Error> {
        let text: Vec<&str> = lines.iter().map(|l| l.as_ref()).collect();
        text.join("\n").parse()
    }
}

impl fmt::Display for TreeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.table_lines().iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(line)?;
        }
        Ok(())
    }
}

impl FromStr for TreeDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut declared: Option<(ElementClass, usize)> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            if let Some(rest) = trimmed.strip_prefix("class:") {
                if !pairs.is_empty() || declared.is_some() {
                    return Err(Error::parse(
                        line_no,
                        indent + 1,
                        "class header must come first",
                    ));
                }
                let class = rest
                    .trim()
                    .parse::<ElementClass>()
                    .map_err(|_| Error::parse(line_no, indent + 7, "expected F, T or V"))?;
                declared = Some((class, line_no));
                continue;
            }
            let Some(arrow) = trimmed.find("->") else {
                return Err(Error::parse(line_no, indent + 1, "expected `u -> v`"));
            };
            let left = &trimmed[..arrow];
            let right = &trimmed[arrow + 2..];
            let from = parse_word(left.trim(), line_no, indent + 1)?;
            let right_col = indent + arrow + 3 + (right.len() - right.trim_start().len());
            let to = parse_word(right.trim(), line_no, right_col)?;
            pairs.push((from, to));
        }
        if pairs.is_empty() {
            return Err(Error::parse(1, 1, "empty branch table"));
        }
        let sources: Vec<&BinaryWord> = pairs.iter().map(|p| &p.0).collect();
        if sources.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDiagram(
                "source branches must be listed left to right".into(),
            ));
        }
        let d = TreeDiagram::from_pairs(pairs)?;
        if let Some((class, line)) = declared {
            if d.class() != class {
                return Err(Error::parse(
                    line,
                    1,
                    format!(
                        "declared class {class} but the table is class {}",
                        d.class()
                    ),
                ));
            }
        }
        Ok(d)
    }
}

/// Serialized as the list of table lines.
impl serde::Serialize for TreeDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.table_lines().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for TreeDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lines = Vec::<String>::deserialize(d)?;
        let d = TreeDiagram::from_lines(&lines).map_err(serde::de::Error::custom)?;
        if d.table_lines() != lines {
            return Err(serde::de::Error::custom(
                "branch table is not in canonical form",
            ));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x0_text() {
        let text = TreeDiagram::x0().to_text();
        assert_eq!(text, "class: F\n00 -> 0\n01 -> 10\n1 -> 11\n");
        assert_eq!(text.parse::<TreeDiagram>().unwrap(), TreeDiagram::x0());
    }

    #[test]
    fn identity_uses_epsilon() {
        assert_eq!(TreeDiagram::identity().table_lines(), vec!["ε -> ε"]);
        assert_eq!(
            "ε -> ε".parse::<TreeDiagram>().unwrap(),
            TreeDiagram::identity()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = "00 -> 0\n01 -> 1x\n1 -> 11"
            .parse::<TreeDiagram>()
            .unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 8,
                message: "unexpected 'x' in binary word".into()
            }
        );
        assert!(matches!(
            "00 -> 0\n01 => 10".parse::<TreeDiagram>(),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn class_header_checked() {
        assert!("class: T\n00 -> 0\n01 -> 10\n1 -> 11"
            .parse::<TreeDiagram>()
            .is_err());
        assert!("class: F\n00 -> 0\n01 -> 10\n1 -> 11"
            .parse::<TreeDiagram>()
            .is_ok());
    }

    #[test]
    fn serde_uses_table_lines() {
        let json = serde_json::to_string(&TreeDiagram::x1()).unwrap();
        assert_eq!(json, r#"["0 -> 0","100 -> 10","101 -> 110","11 -> 111"]"#);
        let back: TreeDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, TreeDiagram::x1());
    }

    #[test]
    fn rejects_bad_codes_and_order() {
        assert!("0 -> 0\n1 -> 0".parse::<TreeDiagram>().is_err());
        assert!("1 -> 1\n0 -> 0".parse::<TreeDiagram>().is_err());
        assert!("0 -> 0".parse::<TreeDiagram>().is_err());
    }
}
