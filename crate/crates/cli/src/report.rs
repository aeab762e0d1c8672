//! Report and certificate payloads. Certificates carry raw coordinate arrays
//! so they can be written, edited and re-read without the library types.

use groupmatch_core::partition::AdmissibleClass;
use groupmatch_core::{
    verify_matching, verify_partition, verify_witness, AdmissiblePartition, Deltoid, GroupSet,
    GroupSpec, ObstructionWitness, PartialMatching, Side, StabilizerPair,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::instance::raw_set;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: Value,
        results: Value,
        certificates: Vec<Certificate>,
    ) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            results,
            certificates,
        }
    }

    /// Indented JSON with a trailing newline; arrays of scalars (group
    /// elements, pairs of them) stay on one line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports always serialize");
        let mut s = String::new();
        write_json(&mut s, &v, 0);
        s.push('\n');
        s
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| match x {
            Value::Array(inner) => inner.iter().all(|y| !y.is_array() && !y.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_json(out: &mut String, v: &Value, depth: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        // Flat arrays and scalars use serde_json's compact form.
        other => out.push_str(&other.to_string()),
    }
}

pub type RawPair = (Vec<i64>, Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawClass {
    pub elements: Vec<Vec<i64>>,
    pub pairs: Vec<RawPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Certificate {
    Matching {
        pairs: Vec<RawPair>,
        defect: usize,
    },
    Witness {
        #[serde(rename = "S")]
        s: Vec<Vec<i64>>,
        #[serde(rename = "R")]
        r: Vec<Vec<i64>>,
        #[serde(rename = "Y")]
        y: Vec<Vec<i64>>,
        #[serde(rename = "Z")]
        z: Vec<Vec<i64>>,
        level: usize,
    },
    Partition {
        side: RawSide,
        classes: Vec<RawClass>,
    },
    StabilizerPair {
        #[serde(rename = "S")]
        s: Vec<Vec<i64>>,
        #[serde(rename = "R")]
        r: Vec<Vec<i64>>,
        value: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawSide {
    Left,
    Right,
}

impl From<Side> for RawSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => RawSide::Left,
            Side::Right => RawSide::Right,
        }
    }
}

impl From<RawSide> for Side {
    fn from(s: RawSide) -> Self {
        match s {
            RawSide::Left => Side::Left,
            RawSide::Right => Side::Right,
        }
    }
}

fn raw_pairs(m: &PartialMatching) -> Vec<RawPair> {
    m.pairs
        .iter()
        .map(|(a, b)| (a.coords().to_vec(), b.coords().to_vec()))
        .collect()
}

impl From<&PartialMatching> for Certificate {
    fn from(m: &PartialMatching) -> Self {
        Certificate::Matching {
            pairs: raw_pairs(m),
            defect: m.defect,
        }
    }
}

impl From<&ObstructionWitness> for Certificate {
    fn from(w: &ObstructionWitness) -> Self {
        Certificate::Witness {
            s: raw_set(&w.s),
            r: raw_set(&w.r),
            y: raw_set(&w.y),
            z: raw_set(&w.z),
            level: w.level,
        }
    }
}

impl From<&AdmissiblePartition> for Certificate {
    fn from(p: &AdmissiblePartition) -> Self {
        Certificate::Partition {
            side: p.side.into(),
            classes: p
                .classes
                .iter()
                .map(|c| RawClass {
                    elements: raw_set(&c.elements),
                    pairs: raw_pairs(&c.matching),
                })
                .collect(),
        }
    }
}

impl From<&StabilizerPair> for Certificate {
    fn from(p: &StabilizerPair) -> Self {
        Certificate::StabilizerPair {
            s: raw_set(&p.s),
            r: raw_set(&p.r),
            value: p.value,
        }
    }
}

fn set(g: &GroupSpec, field: &str, raw: &[Vec<i64>]) -> Result<GroupSet, CliError> {
    crate::instance::parse_set(g, field, raw)
}

fn matching(g: &GroupSpec, pairs: &[RawPair], defect: usize) -> Result<PartialMatching, CliError> {
    let pairs = pairs
        .iter()
        .map(|(a, b)| {
            let a = g
                .element(a.clone())
                .map_err(|e| CliError::Invalid(format!("certificate pair: {e}")))?;
            let b = g
                .element(b.clone())
                .map_err(|e| CliError::Invalid(format!("certificate pair: {e}")))?;
            Ok((a, b))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(PartialMatching { pairs, defect })
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Matching { .. } => "matching",
            Certificate::Witness { .. } => "witness",
            Certificate::Partition { .. } => "partition",
            Certificate::StabilizerPair { .. } => "stabilizer_pair",
        }
    }

    /// `Ok(Err(reason))` for a well-formed certificate that fails to check;
    /// `Err` when the coordinates do not even describe group elements.
    pub fn check(&self, d: &Deltoid) -> Result<Result<(), String>, CliError> {
        let g = d.group();
        Ok(match self {
            Certificate::Matching { pairs, defect } => {
                verify_matching(d, &matching(g, pairs, *defect)?).map_err(|v| v.to_string())
            }
            Certificate::Witness { s, r, y, z, level } => {
                let w = ObstructionWitness {
                    s: set(g, "S", s)?,
                    r: set(g, "R", r)?,
                    y: set(g, "Y", y)?,
                    z: set(g, "Z", z)?,
                    level: *level,
                };
                let duplicates = [(s, &w.s), (r, &w.r), (y, &w.y), (z, &w.z)]
                    .iter()
                    .any(|(raw, parsed)| raw.len() != parsed.len());
                if duplicates {
                    Err("witness sets contain repeated elements".to_string())
                } else {
                    verify_witness(d, &w).map_err(|v| v.to_string())
                }
            }
            Certificate::Partition { side, classes } => {
                let mut parsed = Vec::with_capacity(classes.len());
                for (i, c) in classes.iter().enumerate() {
                    let elements = set(g, "elements", &c.elements)?;
                    if elements.len() != c.elements.len() {
                        return Ok(Err(format!("class {i} lists an element twice")));
                    }
                    let defect = d.size().saturating_sub(c.pairs.len());
                    parsed.push(AdmissibleClass {
                        elements,
                        matching: matching(g, &c.pairs, defect)?,
                    });
                }
                let p = AdmissiblePartition {
                    side: (*side).into(),
                    classes: parsed,
                };
                verify_partition(d, &p).map_err(|v| v.to_string())
            }
            Certificate::StabilizerPair { s, r, value } => {
                let pair = StabilizerPair {
                    s: set(g, "S", s)?,
                    r: set(g, "R", r)?,
                    value: *value,
                };
                if pair.is_valid_for(d) {
                    Ok(())
                } else {
                    Err(
                        "S + R is not contained in S, or the sets or value do not fit the instance"
                            .to_string(),
                    )
                }
            }
        })
    }
}

/// Accepts a full report (its `certificates`), a bare certificate or an
/// array of certificates.
pub fn certificates_from_json(v: Value) -> Result<Vec<Certificate>, CliError> {
    let list = match v {
        Value::Object(mut m) if m.contains_key("certificates") && !m.contains_key("kind") => {
            m.remove("certificates").unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items),
        other => Value::Array(vec![other]),
    };
    serde_json::from_value(list).map_err(|e| CliError::Invalid(format!("certificate file: {e}")))
}
