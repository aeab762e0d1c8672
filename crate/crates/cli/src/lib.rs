//! `groupmatch` command-line frontend: loads instance files, runs the
//! library computations and prints deterministic JSON reports.

pub mod instance;
mod pretty;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use groupmatch_core::matching::SubsetProfile;
use groupmatch_core::partition::{
    lambda_by_search, lambda_from_profile, rho_by_search, rho_from_profile,
};
use groupmatch_core::{
    best_stabilizer_pair, chowla_defect, construct_deficient_pair, deficiency, find_witness,
    lambda_lower_bound, max_matching, partial_matching_with_defect, partition_left,
    partition_right, rho_by_pairs, Deltoid, Error, PartitionNumber,
};
use serde_json::{json, Value};
use thiserror::Error;

use instance::{load_instance, InstanceFile};
use report::{certificates_from_json, Certificate, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ABSENT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceLimit { .. }) => EXIT_LIMIT,
            _ => EXIT_INVALID,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "groupmatch",
    version,
    about = "Partial matchings in abelian groups"
)]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Deficiency by augmenting paths, subset sweep and subgroup formula.
    Deficiency { file: PathBuf },
    /// A partial matching with the given defect.
    Match {
        file: PathBuf,
        #[arg(long)]
        defect: usize,
    },
    /// An obstruction witness certifying deficiency > ell.
    Witness {
        file: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Right partition number (partitions of B).
    Rho { file: PathBuf },
    /// Left partition number (partitions of A).
    Lambda { file: PathBuf },
    /// An admissible partition into k classes (default: the fewest possible).
    Partition {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// Build A, B of size n in the given finite group with deficiency > ell.
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Chowla defect of B and the matching bound it gives.
    Chowla { file: PathBuf },
    /// Re-check certificates against an instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
}

/// A computed report and the exit code it should produce.
struct Outcome {
    report: Report,
    code: i32,
    reason: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            code: EXIT_OK,
            reason: None,
        }
    }

    fn absent(report: Report, reason: String) -> Self {
        Self {
            report,
            code: EXIT_ABSENT,
            reason: Some(reason),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let mut text = e.render().to_string();
            if code == EXIT_INVALID && !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
            }
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(&cli.command, err) {
        Ok(outcome) => {
            let text = if cli.pretty {
                pretty::render(&outcome.report)
            } else {
                outcome.report.to_json()
            };
            let _ = out.write_all(text.as_bytes());
            if let Some(reason) = &outcome.reason {
                let _ = writeln!(err, "{reason}");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Deltoid, CliError> {
    let loaded = load_instance(path)?;
    for w in &loaded.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(loaded.deltoid)
}

fn echo(d: &Deltoid, params: Value) -> Value {
    json!({ "instance": InstanceFile::from_deltoid(d), "params": params })
}

/// `Some(value)` on success, `None` when the route is skipped because the
/// instance exceeds a limit or the group is infinite.
fn optional<T>(r: groupmatch_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ResourceLimit { .. } | Error::UnsupportedInfiniteGroup(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn dispatch(cmd: &Command, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Deficiency { file } => cmd_deficiency(&load(file, err)?),
        Command::Match { file, defect } => cmd_match(&load(file, err)?, *defect),
        Command::Witness { file, ell } => cmd_witness(&load(file, err)?, *ell),
        Command::Rho { file } => cmd_rho(&load(file, err)?),
        Command::Lambda { file } => cmd_lambda(&load(file, err)?),
        Command::Partition { file, side, k } => {
            cmd_partition(&load(file, err)?, *side, k.map(|k| k as usize))
        }
        Command::Construct { group, n, ell } => cmd_construct(group, *n, *ell),
        Command::Chowla { file } => cmd_chowla(&load(file, err)?),
        Command::Verify { file, certificate } => cmd_verify(&load(file, err)?, certificate),
    }
}

fn cmd_deficiency(d: &Deltoid) -> Result<Outcome, CliError> {
    let m = max_matching(d);
    let delta = m.defect;
    let by_subsets = optional(SubsetProfile::compute(d))?.map(|p| p.deficiency().0);
    let pair = optional(best_stabilizer_pair(d))?;
    let by_subgroups = pair.as_ref().map(|p| p.value as usize);
    let agreement =
        by_subsets.is_none_or(|v| v == delta) && by_subgroups.is_none_or(|v| v == delta);
    let mut certificates = vec![Certificate::from(&m)];
    if let Some(p) = &pair {
        certificates.push(Certificate::from(p));
    }
    Ok(Outcome::ok(Report::new(
        "deficiency",
        echo(d, json!({})),
        json!({
            "delta": delta,
            "by_matching": delta,
            "by_subsets": by_subsets,
            "by_subgroups": by_subgroups,
            "agreement": agreement,
        }),
        certificates,
    )))
}

fn cmd_match(d: &Deltoid, defect: usize) -> Result<Outcome, CliError> {
    let found = partial_matching_with_defect(d, defect)?;
    let delta = deficiency(d);
    let inputs = echo(d, json!({ "defect": defect }));
    Ok(match found {
        Some(m) => Outcome::ok(Report::new(
            "match",
            inputs,
            json!({ "found": true, "defect": defect, "delta": delta }),
            vec![Certificate::from(&m)],
        )),
        None => {
            let reason = format!("no matching: defect {defect} is below the deficiency {delta}");
            Outcome::absent(
                Report::new(
                    "match",
                    inputs,
                    json!({ "found": false, "defect": defect, "delta": delta, "reason": reason }),
                    vec![],
                ),
                reason,
            )
        }
    })
}

fn cmd_witness(d: &Deltoid, ell: usize) -> Result<Outcome, CliError> {
    let inputs = echo(d, json!({ "ell": ell }));
    Ok(match find_witness(d, ell)? {
        Some(w) => Outcome::ok(Report::new(
            "witness",
            inputs,
            json!({ "found": true, "ell": ell }),
            vec![Certificate::from(&w)],
        )),
        None => {
            let reason = "no witness: deficiency not greater than ell".to_string();
            Outcome::absent(
                Report::new(
                    "witness",
                    inputs,
                    json!({ "found": false, "ell": ell, "reason": reason }),
                    vec![],
                ),
                reason,
            )
        }
    })
}

fn cmd_rho(d: &Deltoid) -> Result<Outcome, CliError> {
    let (rho, method) = match optional(SubsetProfile::compute(d))? {
        Some(p) => (rho_from_profile(d, &p), "subsets"),
        None => match rho_by_pairs(d) {
            Ok(r) => (r, "stabilizer_pairs"),
            Err(Error::InfiniteRho) => (PartitionNumber::Infinite, "stabilizer_pairs"),
            Err(e) => return Err(e.into()),
        },
    };
    let mut results = json!({ "rho": rho, "method": method });
    let mut certificates = vec![];
    match rho {
        PartitionNumber::Finite(k) => {
            let p = partition_right(d, k)
                .ok_or_else(|| Error::Internal(format!("no right partition at k = {k}")))?;
            certificates.push(Certificate::from(&p));
        }
        PartitionNumber::Infinite => {
            // A + x = A makes x unreachable from every a.
            if let Some(x) = d.stabilizing_element() {
                results["stabilizing_element"] = json!(x.coords());
            }
        }
    }
    Ok(Outcome::ok(Report::new(
        "rho",
        echo(d, json!({})),
        results,
        certificates,
    )))
}

fn cmd_lambda(d: &Deltoid) -> Result<Outcome, CliError> {
    let by_subsets = match optional(SubsetProfile::compute(d))? {
        Some(p) => lambda_from_profile(&p)?.finite(),
        None => None,
    };
    let by_search = lambda_by_search(d);
    let lower_bound = optional(lambda_lower_bound(d))?;
    let p = partition_left(d, by_search)
        .ok_or_else(|| Error::Internal(format!("no left partition at k = {by_search}")))?;
    Ok(Outcome::ok(Report::new(
        "lambda",
        echo(d, json!({})),
        json!({
            "lambda": by_search,
            "by_subsets": by_subsets,
            "by_search": by_search,
            "lower_bound": lower_bound,
            "agreement": by_subsets.is_none_or(|v| v == by_search),
        }),
        vec![Certificate::from(&p)],
    )))
}

fn cmd_partition(d: &Deltoid, side: SideArg, k: Option<usize>) -> Result<Outcome, CliError> {
    let side_name = match side {
        SideArg::Left => "left",
        SideArg::Right => "right",
    };
    let inputs = echo(d, json!({ "side": side_name, "k": k }));
    let absent = |inputs: Value, k: Option<usize>, reason: String| {
        Outcome::absent(
            Report::new(
                "partition",
                inputs,
                json!({ "found": false, "side": side_name, "k": k, "reason": reason }),
                vec![],
            ),
            reason,
        )
    };
    let k = match (k, side) {
        (Some(k), _) => k,
        (None, SideArg::Left) => lambda_by_search(d),
        (None, SideArg::Right) => match rho_by_search(d) {
            PartitionNumber::Finite(k) => k,
            PartitionNumber::Infinite => {
                let reason = "no partition: right partition number is infinite".to_string();
                return Ok(absent(inputs, None, reason));
            }
        },
    };
    let found = match side {
        SideArg::Left => partition_left(d, k),
        SideArg::Right => partition_right(d, k),
    };
    Ok(match found {
        Some(p) => Outcome::ok(Report::new(
            "partition",
            inputs,
            json!({
                "found": true,
                "side": side_name,
                "k": k,
                "class_sizes": p.classes.iter().map(|c| c.elements.len()).collect::<Vec<_>>(),
            }),
            vec![Certificate::from(&p)],
        )),
        None => {
            let reason =
                format!("no partition: {k} classes are not enough on the {side_name} side");
            absent(inputs, Some(k), reason)
        }
    })
}

fn cmd_construct(group: &str, n: usize, ell: usize) -> Result<Outcome, CliError> {
    let g = instance::parse_group(group)?;
    let inputs = json!({ "params": { "group": g.to_string(), "n": n, "ell": ell } });
    let pair = match construct_deficient_pair(&g, n, ell) {
        Ok(p) => p,
        Err(Error::NoConstruction) => {
            let reason =
                "no construction: no subgroup satisfies the divisibility condition".to_string();
            return Ok(Outcome::absent(
                Report::new(
                    "construct",
                    inputs,
                    json!({ "found": false, "reason": reason }),
                    vec![],
                ),
                reason,
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let d = Deltoid::new(pair.a.clone(), pair.b.clone())?;
    let instance = InstanceFile::from_deltoid(&d);
    Ok(Outcome::ok(Report::new(
        "construct",
        inputs,
        json!({
            "found": true,
            "instance": instance,
            "subgroup": pair.subgroup.elements().iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>(),
            "delta": deficiency(&d),
        }),
        vec![Certificate::from(&pair.witness)],
    )))
}

fn cmd_chowla(d: &Deltoid) -> Result<Outcome, CliError> {
    let c = chowla_defect(d.b());
    let delta = deficiency(d);
    let applies = c <= d.size();
    // A matching with defect c certifies the bound directly.
    let m = if applies {
        partial_matching_with_defect(d, c)?.unwrap_or_else(|| max_matching(d))
    } else {
        max_matching(d)
    };
    Ok(Outcome::ok(Report::new(
        "chowla",
        echo(d, json!({})),
        json!({
            "chowla_defect": c,
            "delta": delta,
            "bound_applies": applies,
            "bound_holds": delta <= c,
        }),
        vec![Certificate::from(&m)],
    )))
}

fn cmd_verify(d: &Deltoid, path: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let certs = certificates_from_json(v)?;
    if certs.is_empty() {
        return Err(CliError::Invalid(format!(
            "{}: no certificates found",
            path.display()
        )));
    }
    let mut checks = Vec::with_capacity(certs.len());
    let mut failures = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        match c.check(d)? {
            Ok(()) => checks.push(json!({ "index": i, "kind": c.kind(), "valid": true })),
            Err(reason) => {
                failures.push(format!("certificate {i} ({}): {reason}", c.kind()));
                checks.push(
                    json!({ "index": i, "kind": c.kind(), "valid": false, "reason": reason }),
                );
            }
        }
    }
    let valid = failures.is_empty();
    let report = Report::new(
        "verify",
        echo(d, json!({})),
        json!({ "valid": valid, "checked": certs.len(), "checks": checks }),
        vec![],
    );
    Ok(if valid {
        Outcome::ok(report)
    } else {
        Outcome::absent(report, failures.join("\n"))
    })
}
