//! JSON documents accepted by the command-line front end.
//!
//! Operators are `{"dim": d, "entries": [[re, im], ...]}` in row-major
//! order. A check document is either a bare operator or
//!
//! ```json
//! {"operator": {...}, "rule": "minimal", "certificate": {...}, "complement_certificate": {...}}
//! ```
//!
//! where a certificate is `{"terms": [{"a": op, "b": op}, ...]}`. A game
//! document names its theory:
//!
//! ```json
//! {"theory": "composite", "rule": "maximal", "strategy": {...}}
//! {"theory": "polytope", "system": "square", "strategy": {...}}
//! ```
//!
//! A strategy is `{"n_bits": N, "branches": [{"weight": "1/1", "encoding":
//! [...], "decodings": [{"measurement": {"effects": [...]}, "guesses":
//! ["0", "1"]}]}]}`. Composite encodings and effects are check documents in
//! the object form; polytope states and effects are coordinate triples. The
//! polytope system is a built-in name (`square`, `octagon`, `classical`,
//! `polygon-N`) or an inline `{"name", "states", "effects", "unit"}` object.
//!
//! Every error carries the path of the first offending field.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::composition::{CertifiedOperator, CompositionRule};
use crate::error::{Error, Result};
use crate::game::{Branch, Decoding, IcStrategy};
use crate::gpt::{classical_bit, octagon, polygon_system, square_bit, GptSystem, GptVector};
use crate::measurement::Measurement;
use crate::operator::HermitianOperator;

fn schema_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn join(prefix: &str, path: &str) -> String {
    match (prefix.is_empty(), path == "." || path.is_empty()) {
        (true, true) => ".".into(),
        (true, false) => path.into(),
        (false, true) => prefix.into(),
        (false, false) if path.starts_with('[') => format!("{prefix}{path}"),
        (false, false) => format!("{prefix}.{path}"),
    }
}

fn from_str_at<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de)
        .map_err(|e| schema_error(e.path().to_string(), e.inner().to_string()))?;
    Ok(value)
}

fn from_value_at<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| schema_error(join(prefix, &e.path().to_string()), e.inner().to_string()))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| schema_error(".", e.to_string()))
}

pub fn parse_operator(text: &str) -> Result<HermitianOperator> {
    from_str_at(text)
}

/// Operator with optional certificates and composition rule.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDocument {
    pub operator: HermitianOperator,
    #[serde(default)]
    pub rule: Option<CompositionRule>,
    #[serde(default)]
    pub certificate: Option<crate::composition::SeparableCertificate>,
    #[serde(default)]
    pub complement_certificate: Option<crate::composition::SeparableCertificate>,
}

impl CheckDocument {
    pub fn certified(&self) -> CertifiedOperator {
        CertifiedOperator {
            operator: self.operator.clone(),
            certificate: self.certificate.clone(),
            complement_certificate: self.complement_certificate.clone(),
        }
    }
}

pub fn parse_check_document(text: &str) -> Result<CheckDocument> {
    let value = parse_value(text)?;
    if value.get("dim").is_some() {
        let operator = from_value_at(value, "")?;
        return Ok(CheckDocument {
            operator,
            rule: None,
            certificate: None,
            complement_certificate: None,
        });
    }
    from_value_at(value, "")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositeGameDoc {
    #[allow(dead_code)]
    theory: String,
    rule: CompositionRule,
    strategy: IcStrategy<CertifiedOperator, CertifiedOperator>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeGameDoc {
    #[allow(dead_code)]
    theory: String,
    system: Value,
    strategy: IcStrategy<[f64; 3], [f64; 3]>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GameDocument {
    Composite {
        rule: CompositionRule,
        strategy: IcStrategy<CertifiedOperator, CertifiedOperator>,
    },
    Polytope {
        system: GptSystem,
        strategy: IcStrategy<GptVector, GptVector>,
    },
}

/// Built-in polytope systems by name.
pub fn builtin_system(name: &str) -> Result<GptSystem> {
    match name {
        "square" | "square-bit" => Ok(square_bit()),
        "octagon" => Ok(octagon()),
        "classical" | "classical-bit" => Ok(classical_bit()),
        other => {
            let n = other
                .strip_prefix("polygon-")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::InvalidParameter(format!("unknown system `{other}`")))?;
            polygon_system(n)
        }
    }
}

pub fn parse_system(text: &str) -> Result<GptSystem> {
    system_from_value(parse_value(text)?, "")
}

fn system_from_value(value: Value, prefix: &str) -> Result<GptSystem> {
    match value {
        Value::String(name) => builtin_system(&name).map_err(|e| schema_error(join(prefix, "."), e.to_string())),
        other => from_value_at(other, prefix),
    }
}

fn to_vectors(strategy: IcStrategy<[f64; 3], [f64; 3]>) -> IcStrategy<GptVector, GptVector> {
    IcStrategy {
        n_bits: strategy.n_bits,
        branches: strategy
            .branches
            .into_iter()
            .map(|b| Branch {
                weight: b.weight,
                encoding: b.encoding.into_iter().map(GptVector::state).collect(),
                decodings: b
                    .decodings
                    .into_iter()
                    .map(|d| Decoding {
                        measurement: Measurement {
                            effects: d.measurement.effects.into_iter().map(GptVector::effect).collect(),
                            labels: d.measurement.labels,
                        },
                        guesses: d.guesses,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn parse_game_document(text: &str) -> Result<GameDocument> {
    let value = parse_value(text)?;
    let theory = match value.get("theory") {
        Some(Value::String(t)) => t.clone(),
        Some(_) => return Err(schema_error("theory", "expected a string")),
        None => return Err(schema_error("theory", "missing field `theory`")),
    };
    match theory.as_str() {
        "composite" => {
            let doc: CompositeGameDoc = from_value_at(value, "")?;
            Ok(GameDocument::Composite {
                rule: doc.rule,
                strategy: doc.strategy,
            })
        }
        "polytope" => {
            let doc: PolytopeGameDoc = from_value_at(value, "")?;
            let system = system_from_value(doc.system, "system")?;
            Ok(GameDocument::Polytope {
                system,
                strategy: to_vectors(doc.strategy),
            })
        }
        other => Err(schema_error(
            "theory",
            format!("unknown theory `{other}`, expected `composite` or `polytope`"),
        )),
    }
}
