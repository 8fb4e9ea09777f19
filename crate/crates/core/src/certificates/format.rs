//! Plain-text (TOML) certificate files.
//!
//! ```toml
//! name = "example-3.1"
//! k = 3
//! intervals = [
//!     { bottom = "110", top = "111" },
//!     { bottom = "001" },
//! ]
//!
//! [claim]
//! type = "minterm"
//! sets = [[3]]
//! ```
//!
//! An interval may also be written as a string in bracket notation, e.g.
//! `"[100,101]"` or `"[001]"`. A numeric claim reads
//! `{ type = "value", weights = [1, 2, 5], value = 5 }`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Certificate, Claim};
use crate::error::Error;
use crate::lattice::{Interval, SubsetMask, WeightVector};
use crate::oracle::MinTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("{field}: {source}")]
    Field {
        field: String,
        #[source]
        source: Error,
    },

    #[error("intervals[{index}]: duplicate of intervals[{first}]")]
    DuplicateInterval { index: usize, first: usize },
}

fn field_error(field: impl Into<String>) -> impl FnOnce(Error) -> ParseError {
    let field = field.into();
    move |source| ParseError::Field { field, source }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    name: String,
    k: usize,
    intervals: Vec<IntervalDoc>,
    claim: ClaimDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    erratum: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntervalDoc {
    Bracket(String),
    Table(IntervalTable),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalTable {
    bottom: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ClaimDoc {
    Minterm { sets: Vec<Vec<usize>> },
    Value { weights: Vec<u64>, value: u64 },
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let doc: Document = toml::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
    let k = doc.k;
    crate::lattice::SubsetMask::empty(k).map_err(field_error("k"))?;

    let mut intervals = Vec::with_capacity(doc.intervals.len());
    let mut seen: HashMap<Interval, usize> = HashMap::new();
    for (index, raw) in doc.intervals.iter().enumerate() {
        let at = format!("intervals[{index}]");
        let iv = match raw {
            IntervalDoc::Bracket(s) => {
                let iv = Interval::parse(s).map_err(field_error(at.clone()))?;
                if iv.arity() != k {
                    return Err(ParseError::Field {
                        field: at,
                        source: Error::ArityMismatch { expected: k, found: iv.arity() },
                    });
                }
                iv
            }
            IntervalDoc::Table(t) => {
                let bottom = SubsetMask::parse_with_arity(&t.bottom, k).map_err(field_error(format!("{at}.bottom")))?;
                let top = match &t.top {
                    Some(top) => SubsetMask::parse_with_arity(top, k).map_err(field_error(format!("{at}.top")))?,
                    None => bottom,
                };
                Interval::new(bottom, top).map_err(field_error(at))?
            }
        };
        if let Some(&first) = seen.get(&iv) {
            return Err(ParseError::DuplicateInterval { index, first });
        }
        seen.insert(iv, index);
        intervals.push(iv);
    }

    let claim = match doc.claim {
        ClaimDoc::Minterm { sets } => {
            let masks = sets
                .iter()
                .enumerate()
                .map(|(i, set)| SubsetMask::from_coords(set, k).map_err(field_error(format!("claim.sets[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?;
            Claim::MinTerm(MinTerm::new(masks).map_err(field_error("claim.sets"))?)
        }
        ClaimDoc::Value { weights, value } => {
            let weights = WeightVector::new(weights).map_err(field_error("claim.weights"))?;
            if weights.arity() != k {
                return Err(ParseError::Field {
                    field: "claim.weights".into(),
                    source: Error::ArityMismatch { expected: k, found: weights.arity() },
                });
            }
            Claim::Value { weights, value }
        }
    };

    Ok(Certificate { name: doc.name, k, intervals, claim, erratum: doc.erratum })
}

pub fn serialize_certificate(c: &Certificate) -> String {
    let intervals = c
        .intervals
        .iter()
        .map(|iv| {
            IntervalDoc::Table(IntervalTable {
                bottom: iv.bottom().to_string(),
                top: (iv.top() != iv.bottom()).then(|| iv.top().to_string()),
            })
        })
        .collect();
    let claim = match &c.claim {
        Claim::MinTerm(term) => ClaimDoc::Minterm { sets: term.sets().iter().map(|s| s.coords()).collect() },
        Claim::Value { weights, value } => ClaimDoc::Value { weights: weights.as_slice().to_vec(), value: *value },
    };
    let doc = Document { name: c.name.clone(), k: c.k, intervals, claim, erratum: c.erratum.clone() };
    toml::to_string(&doc).expect("certificate documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::paper_corpus;
    use crate::error::MaskSyntax;

    const EXAMPLE: &str = r#"
name = "example-3.1"
k = 3
intervals = [
    { bottom = "110", top = "111" },
    { bottom = "100", top = "101" },
    "[010,011]",
    { bottom = "001" },
]

[claim]
type = "minterm"
sets = [[3]]
"#;

    fn with_intervals(list: &str) -> String {
        format!("name = \"t\"\nk = 3\nintervals = [{list}]\nclaim = {{ type = \"minterm\", sets = [[3]] }}\n")
    }

    #[test]
    fn parses_both_interval_forms() {
        let c = parse_certificate(EXAMPLE).unwrap();
        assert_eq!(c.name, "example-3.1");
        assert_eq!(c.intervals.len(), 4);
        assert_eq!(c.intervals[2].to_string(), "[010,011]");
        assert_eq!(c.intervals[3].to_string(), "[001]");
        assert_eq!(c, paper_corpus()[2]);
    }

    #[test]
    fn round_trip_is_stable() {
        for c in paper_corpus() {
            let text = serialize_certificate(&c);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(serialize_certificate(&back), text);
        }
    }

    #[test]
    fn numeric_claims() {
        let text = "name = \"n\"\nk = 2\nintervals = [\"[10,11]\", \"[01]\"]\n\
                    claim = { type = \"value\", weights = [1, 4], value = 4 }\n";
        let c = parse_certificate(text).unwrap();
        assert!(matches!(c.claim, Claim::Value { value: 4, .. }));
        assert_eq!(parse_certificate(&serialize_certificate(&c)).unwrap(), c);
    }

    #[test]
    fn diagnostics_are_distinct() {
        let err = parse_certificate(&with_intervals("{ bottom = \"012\" }")).unwrap_err();
        assert!(matches!(
            err,
            ParseError::Field { source: Error::InvalidMask { reason: MaskSyntax::InvalidCharacter('2'), .. }, .. }
        ));
        assert!(err.to_string().contains("invalid character"));

        let err = parse_certificate(&with_intervals("{ bottom = \"01\" }")).unwrap_err();
        assert!(matches!(
            err,
            ParseError::Field { source: Error::InvalidMask { reason: MaskSyntax::WrongLength { .. }, .. }, .. }
        ));

        let err = parse_certificate(&with_intervals("{ bottom = \"110\", top = \"100\" }")).unwrap_err();
        assert!(matches!(err, ParseError::Field { source: Error::BottomNotInTop { .. }, .. }));
        assert!(err.to_string().contains("not contained"));

        let err = parse_certificate(&with_intervals("\"[001]\", { bottom = \"001\" }")).unwrap_err();
        assert_eq!(err, ParseError::DuplicateInterval { index: 1, first: 0 });

        let err = parse_certificate(&format!("{}\ncolour = 1\n", EXAMPLE.replace("[claim]", "extra = 2\n[claim]")))
            .unwrap_err();
        assert!(matches!(err, ParseError::Syntax(ref m) if m.contains("unknown field")));

        let err = parse_certificate("name = \"x\"\nk = 3\nintervals = [\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax(ref m) if m.contains("line")));
    }
}
