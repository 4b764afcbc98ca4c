//! Set-description documents.
//!
//! A set is a JSON tree of nodes
//! `{"kind": "finite"|"upray"|"downray"|"line"|"powerfamily"|"union", ...}`
//! with every integer field encoded as a decimal string. Parsing, serializing
//! and re-parsing is the identity on parsed values.

use super::component::ApComponent;
use super::family::PowerIntervalFamily;
use super::{IntSetExpr, Part};
use crate::docint::parse_int;
use crate::{Error, Int, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SetNode {
    Finite {
        values: Vec<String>,
    },
    Upray {
        start: String,
        step: String,
    },
    Downray {
        start: String,
        step: String,
    },
    Line {
        residue: String,
        step: String,
    },
    Powerfamily {
        p: String,
        #[serde(rename = "lowCoeff")]
        low_coeff: String,
        #[serde(rename = "lowOffset")]
        low_offset: String,
        #[serde(rename = "highCoeff")]
        high_coeff: String,
        #[serde(rename = "highOffset")]
        high_offset: String,
        k0: String,
        #[serde(rename = "highClosed")]
        high_closed: bool,
        #[serde(rename = "extraFinite", default)]
        extra_finite: Vec<String>,
    },
    Union {
        parts: Vec<SetNode>,
    },
}

fn doc_err(msg: impl std::fmt::Display) -> Error {
    Error::Document(msg.to_string())
}

fn ints(raw: &[String]) -> Result<Vec<Int>> {
    raw.iter().map(|s| parse_int(s).map_err(doc_err)).collect()
}

fn node_to_parts(node: &SetNode, out: &mut Vec<Part>) -> Result<()> {
    match node {
        SetNode::Finite { values } => {
            let mut v = ints(values)?;
            v.sort();
            v.dedup();
            out.push(Part::Ap(ApComponent::Finite(v)));
        }
        SetNode::Upray { start, step } => out.push(Part::Ap(ApComponent::UpRay {
            start: parse_int(start).map_err(doc_err)?,
            step: parse_int(step).map_err(doc_err)?,
        })),
        SetNode::Downray { start, step } => out.push(Part::Ap(ApComponent::DownRay {
            start: parse_int(start).map_err(doc_err)?,
            step: parse_int(step).map_err(doc_err)?,
        })),
        SetNode::Line { residue, step } => out.push(Part::Ap(ApComponent::Line {
            residue: parse_int(residue).map_err(doc_err)?,
            step: parse_int(step).map_err(doc_err)?,
        })),
        SetNode::Powerfamily {
            p,
            low_coeff,
            low_offset,
            high_coeff,
            high_offset,
            k0,
            high_closed,
            extra_finite,
        } => {
            let k0 = parse_int(k0)
                .map_err(doc_err)?
                .to_u32()
                .ok_or_else(|| doc_err("k0 must be a non-negative 32-bit exponent"))?;
            let f = PowerIntervalFamily::new(
                parse_int(p).map_err(doc_err)?,
                parse_int(low_coeff).map_err(doc_err)?,
                parse_int(low_offset).map_err(doc_err)?,
                parse_int(high_coeff).map_err(doc_err)?,
                parse_int(high_offset).map_err(doc_err)?,
                k0,
                *high_closed,
                ints(extra_finite)?,
            )?;
            out.push(Part::Power(f));
        }
        SetNode::Union { parts } => {
            for p in parts {
                node_to_parts(p, out)?;
            }
        }
    }
    Ok(())
}

fn part_to_node(part: &Part) -> Result<SetNode> {
    Ok(match part {
        Part::Ap(ApComponent::Finite(v)) => SetNode::Finite {
            values: v.iter().map(|x| x.to_string()).collect(),
        },
        Part::Ap(ApComponent::UpRay { start, step }) => SetNode::Upray {
            start: start.to_string(),
            step: step.to_string(),
        },
        Part::Ap(ApComponent::DownRay { start, step }) => SetNode::Downray {
            start: start.to_string(),
            step: step.to_string(),
        },
        Part::Ap(ApComponent::Line { residue, step }) => SetNode::Line {
            residue: residue.to_string(),
            step: step.to_string(),
        },
        Part::Power(f) => SetNode::Powerfamily {
            p: f.base.to_string(),
            low_coeff: f.low_coeff.to_string(),
            low_offset: f.low_offset.to_string(),
            high_coeff: f.high_coeff.to_string(),
            high_offset: f.high_offset.to_string(),
            k0: f.k0.to_string(),
            high_closed: f.high_closed,
            extra_finite: f.extra_finite.iter().map(|x| x.to_string()).collect(),
        },
        Part::Complement { .. } => {
            return Err(doc_err(
                "oracle complement wrappers have no document form",
            ))
        }
    })
}

fn expr_to_node(e: &IntSetExpr) -> Result<SetNode> {
    match e.parts() {
        [] => Ok(SetNode::Finite { values: vec![] }),
        [one] => part_to_node(one),
        many => Ok(SetNode::Union {
            parts: many.iter().map(part_to_node).collect::<Result<_>>()?,
        }),
    }
}

/// Parses a set-description document.
pub fn parse_set_document(text: &str) -> Result<IntSetExpr> {
    let node: SetNode = serde_json::from_str(text).map_err(doc_err)?;
    let mut parts = Vec::new();
    node_to_parts(&node, &mut parts)?;
    IntSetExpr::from_parts(parts)
}

/// Serializes an expression as a set-description document.
pub fn set_to_document(e: &IntSetExpr) -> Result<String> {
    serde_json::to_string(&expr_to_node(e)?).map_err(doc_err)
}

/// Serializes an expression as a JSON value, for embedding in reports.
pub fn set_document_value(e: &IntSetExpr) -> Result<serde_json::Value> {
    serde_json::to_value(expr_to_node(e)?).map_err(doc_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_serialize_parse_is_identity() {
        let doc = r#"{"kind":"union","parts":[
            {"kind":"finite","values":["1"]},
            {"kind":"powerfamily","p":"2","lowCoeff":"1","lowOffset":"9",
             "highCoeff":"2","highOffset":"0","k0":"4","highClosed":false,
             "extraFinite":[]},
            {"kind":"upray","start":"-3","step":"7"}
        ]}"#;
        let once = parse_set_document(doc).unwrap();
        let text = set_to_document(&once).unwrap();
        let twice = parse_set_document(&text).unwrap();
        assert_eq!(once, twice);
        assert_eq!(set_to_document(&twice).unwrap(), text);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(parse_set_document("{").is_err());
        assert!(parse_set_document(r#"{"kind":"upray","start":"0"}"#).is_err());
        assert!(parse_set_document(r#"{"kind":"upray","start":"0","step":"0"}"#).is_err());
        assert!(parse_set_document(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn big_integers_survive() {
        let doc = r#"{"kind":"finite","values":["123456789012345678901234567890"]}"#;
        let e = parse_set_document(doc).unwrap();
        let v = crate::docint::parse_int("123456789012345678901234567890").unwrap();
        assert!(e.member(&v));
    }
}
