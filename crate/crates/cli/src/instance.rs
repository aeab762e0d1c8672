//! Instance files: `{"group": "Z12", "A": [[0], ...], "B": [[1], ...]}`.

use std::path::Path;

use groupmatch_core::{Deltoid, GroupSet, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
}

impl InstanceFile {
    /// Canonical echo of a validated instance.
    pub fn from_deltoid(d: &Deltoid) -> Self {
        Self {
            group: d.group().to_string(),
            a: raw_set(d.a()),
            b: raw_set(d.b()),
        }
    }
}

pub fn raw_set(s: &GroupSet) -> Vec<Vec<i64>> {
    s.iter().map(|x| x.coords().to_vec()).collect()
}

/// A validated instance plus any canonicalization warnings.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub deltoid: Deltoid,
    pub warnings: Vec<String>,
}

pub fn parse_group(literal: &str) -> Result<GroupSpec, CliError> {
    literal
        .parse()
        .map_err(|e| CliError::Invalid(format!("field `group`: {e}")))
}

pub fn parse_set(g: &GroupSpec, field: &str, raw: &[Vec<i64>]) -> Result<GroupSet, CliError> {
    let elements = raw
        .iter()
        .enumerate()
        .map(|(i, c)| {
            g.element(c.clone())
                .map_err(|e| CliError::Invalid(format!("field `{field}`[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    GroupSet::new(g.clone(), elements)
        .map_err(|e| CliError::Invalid(format!("field `{field}`: {e}")))
}

pub fn instance_from_file(file: &InstanceFile) -> Result<Loaded, CliError> {
    let g = parse_group(&file.group)?;
    let a = parse_set(&g, "A", &file.a)?;
    let b = parse_set(&g, "B", &file.b)?;
    let mut warnings = Vec::new();
    for (name, raw, set) in [("A", &file.a, &a), ("B", &file.b, &b)] {
        if set.len() < raw.len() {
            warnings.push(format!(
                "duplicate elements in `{name}` removed ({} listed, {} distinct)",
                raw.len(),
                set.len()
            ));
        }
    }
    let deltoid =
        Deltoid::new(a, b).map_err(|e| CliError::Invalid(format!("invalid instance: {e}")))?;
    Ok(Loaded { deltoid, warnings })
}

pub fn load_instance(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    instance_from_file(&file)
}
