//! Versioned certificate documents.
//!
//! Every certificate is written as a JSON object with a `format`, a
//! `version` and a `certificate` key next to the certificate's own fields. All
//! numbers, words, intervals and branch tables are strings in their
//! canonical text forms, and parsing rejects any other spelling, so a
//! document round-trips byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgen::{verify_generation_certificate, GenerationCertificate};
use crate::vdyn::{
    verify_orbit, verify_pingpong, verify_transferred, verify_wandering, OrbitCertificate,
    PingPongInstance, TransferredCertificate, WanderingCertificate,
};

pub const FORMAT_NAME: &str = "thompson-certificate";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    Generation(GenerationCertificate),
    Wandering(WanderingCertificate),
    Transferred(TransferredCertificate),
    Pingpong(PingPongInstance),
    Orbit(OrbitCertificate),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Generation(_) => "generation",
            Certificate::Wandering(_) => "wandering",
            Certificate::Transferred(_) => "transferred",
            Certificate::Pingpong(_) => "pingpong",
            Certificate::Orbit(_) => "orbit",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl Document {
    pub fn new(certificate: Certificate) -> Self {
        Document {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            certificate,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line().max(1), e.column().max(1), e.to_string()))?;
        if doc.format != FORMAT_NAME {
            return Err(Error::parse(
                1,
                1,
                format!("unknown format {:?}", doc.format),
            ));
        }
        if doc.version != FORMAT_VERSION {
            return Err(Error::parse(
                1,
                1,
                format!("unsupported version {}", doc.version),
            ));
        }
        Ok(doc)
    }
}

impl From<GenerationCertificate> for Document {
    fn from(c: GenerationCertificate) -> Self {
        Document::new(Certificate::Generation(c))
    }
}

impl From<WanderingCertificate> for Document {
    fn from(c: WanderingCertificate) -> Self {
        Document::new(Certificate::Wandering(c))
    }
}

impl From<TransferredCertificate> for Document {
    fn from(c: TransferredCertificate) -> Self {
        Document::new(Certificate::Transferred(c))
    }
}

impl From<PingPongInstance> for Document {
    fn from(c: PingPongInstance) -> Self {
        Document::new(Certificate::Pingpong(c))
    }
}

impl From<OrbitCertificate> for Document {
    fn from(c: OrbitCertificate) -> Self {
        Document::new(Certificate::Orbit(c))
    }
}

/// Re-verifies a document; `n_max` bounds the brute-force power checks.
pub fn verify_document(doc: &Document, n_max: u32) -> Result<()> {
    match &doc.certificate {
        Certificate::Generation(c) => verify_generation_certificate(c),
        Certificate::Wandering(c) => verify_wandering(c, n_max),
        Certificate::Transferred(c) => verify_transferred(c, n_max),
        Certificate::Pingpong(c) => verify_pingpong(c, n_max),
        Certificate::Orbit(c) => verify_orbit(c, n_max),
    }
}

/// Parses then verifies.
pub fn verify_text(text: &str, n_max: u32) -> Result<()> {
    verify_document(&Document::from_json(text)?, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vdyn::{wandering_interval, Budgets};
    use crate::TreeDiagram;

    fn x0_doc() -> Document {
        wandering_interval(&TreeDiagram::x0(), &Budgets::default())
            .unwrap()
            .into()
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let text = x0_doc().to_json();
        let back = Document::from_json(&text).unwrap();
        assert_eq!(back, x0_doc());
        assert_eq!(back.to_json(), text);
        assert!(verify_text(&text, 20).is_ok());
    }

    #[test]
    fn envelope_is_checked() {
        let text = x0_doc().to_json();
        assert!(Document::from_json(&text.replace("\"version\": 1", "\"version\": 2")).is_err());
        assert!(Document::from_json(&text.replace(FORMAT_NAME, "other")).is_err());
        assert!(Document::from_json(&text.replace(
            "\"certificate\": \"wandering\"",
            "\"certificate\": \"orbit\""
        ))
        .is_err());
    }

    #[test]
    fn non_canonical_spelling_rejected() {
        let text = x0_doc().to_json();
        assert!(text.contains("\"(10]\""));
        assert!(Document::from_json(&text.replace("\"(10]\"", "\"(2/2^2,3/2^2]\"")).is_err());
    }

    #[test]
    fn parse_errors_have_positions() {
        match Document::from_json("{\n  \"format\": ") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
