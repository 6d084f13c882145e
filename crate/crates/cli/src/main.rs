//! `delta`: certify finite groups given as JSON multiplication tables.
//!
//! Exit status: 0 on success, 1 when a certification, replay, isomorphism
//! or uniqueness check fails (the full JSON result is still printed),
//! 2 on malformed input.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use delta_core::canonical::{canonical_isomorphism, expected_group_bounded};
use delta_core::catalog::{self, CatalogEntry};
use delta_core::certify::{builtin_spec_bounded, certify, SpecialSpec};
use delta_core::replay::proof_replay;
use delta_core::structure::{
    are_isomorphic, center, class_map, conjugacy_classes, derived_subgroup, ClassProfile,
    TwoQuotient,
};
use delta_core::{Error, FiniteGroup, GroupJson, DEFAULT_MAX_ORDER};

#[derive(Parser)]
#[command(
    name = "delta",
    version,
    about = "Certify small finite groups and build canonical isomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes, center, derived subgroup and index-2 count.
    Analyze { group: PathBuf },
    /// Check properties (a)-(d) against a target-data file or a built-in c.
    Certify {
        group: PathBuf,
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<usize>,
    },
    /// Replay the structural argument for c = 6, 24 or 120.
    Replay {
        group: PathBuf,
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<usize>,
    },
    /// Explicit isomorphism onto the canonical group for c.
    Canonical {
        group: PathBuf,
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<usize>,
    },
    /// Decide whether two groups are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Certify every catalog entry of an order and check exactly one passes.
    CatalogVerify {
        order: usize,
        /// Load entries from a JSON-lines catalog instead of the built-in recipes.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Regenerate tables from the loaded catalog and check their hashes.
        #[arg(long, requires = "catalog")]
        rebuild: bool,
        /// Write the deduplicated catalog as JSON lines.
        #[arg(long)]
        write_catalog: Option<PathBuf>,
    },
    /// Print the canonical group for c.
    Expected { c: usize },
}

enum Failure {
    /// A check ran and failed; its JSON has been printed.
    Check,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn max_order() -> Result<usize, Failure> {
    match std::env::var("DELTA_MAX_ORDER") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!("DELTA_MAX_ORDER={v:?} is not a positive integer"))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)
    } else {
        File::open(path).and_then(|mut f| f.read_to_string(&mut text))
    };
    result.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_group(path: &PathBuf, limit: usize) -> Result<FiniteGroup, Failure> {
    let text = read_text(path)?;
    let raw: GroupJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if raw.order > limit {
        return Err(Error::SizeLimitExceeded { limit }.into());
    }
    let (group, _) = raw
        .into_group()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(group)
}

fn load_spec(
    spec: Option<&PathBuf>,
    builtin: Option<usize>,
    limit: usize,
) -> Result<SpecialSpec, Failure> {
    match (spec, builtin) {
        (Some(path), None) => {
            let text = read_text(path)?;
            SpecialSpec::from_json_bounded(&text, limit)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        (None, Some(c)) => Ok(builtin_spec_bounded(c, limit)?),
        _ => Err(Failure::Input(
            "give a target-data file or --builtin C".into(),
        )),
    }
}

/// Prints with sorted keys so output is byte-for-byte reproducible.
fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    write_json(value, true)
}

fn write_json<T: Serialize>(value: &T, pretty: bool) -> Result<(), Failure> {
    let value: Value = serde_json::to_value(value).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = io::stdout().lock();
    let written = if pretty {
        serde_json::to_writer_pretty(&mut out, &value)
    } else {
        serde_json::to_writer(&mut out, &value)
    };
    written.map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out).map_err(|e| Failure::Input(e.to_string()))
}

fn analyze(path: &PathBuf, limit: usize) -> Outcome {
    let g = load_group(path, limit)?;
    let classes = conjugacy_classes(&g);
    let class_of = class_map(&g, &classes);
    let witness = (0..g.order()).find(|&x| class_of[x] != class_of[g.inv(x)]);
    emit(&json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "ambivalent": witness.is_none(),
        "ambivalence_witness": witness,
        "class_profile": ClassProfile::from_classes(&classes),
        "classes": classes.iter().map(|c| json!({
            "representative": c.representative,
            "size": c.size(),
            "centralizer": c.centralizer_order,
            "element_order": c.element_order,
        })).collect::<Vec<_>>(),
        "center_order": center(&g).order(),
        "derived_order": derived_subgroup(&g).order(),
        "index2_count": TwoQuotient::new(&g).index2_count(),
    }))
}

fn run(cli: Cli) -> Outcome {
    let limit = max_order()?;
    match cli.command {
        Command::Analyze { group } => analyze(&group, limit),
        Command::Certify {
            group,
            spec,
            builtin,
        } => {
            let g = load_group(&group, limit)?;
            let spec = load_spec(spec.as_ref(), builtin, limit)?;
            let cert = certify(&g, &spec);
            emit(&cert)?;
            if cert.passed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Replay {
            group,
            spec,
            builtin,
        } => {
            let g = load_group(&group, limit)?;
            let spec = load_spec(spec.as_ref(), builtin, limit)?;
            match proof_replay(&g, &spec) {
                Ok(report) => emit(&report),
                Err(Error::ReplayFailed { assertion, report }) => {
                    emit(&report)?;
                    eprintln!("replay assertion `{assertion}` failed");
                    Err(Failure::Check)
                }
                Err(Error::Precondition(p)) => {
                    emit(&certify(&g, &spec))?;
                    eprintln!("group fails property ({p}); replay not run");
                    Err(Failure::Check)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Canonical {
            group,
            spec,
            builtin,
        } => {
            let g = load_group(&group, limit)?;
            let spec = load_spec(spec.as_ref(), builtin, limit)?;
            match canonical_isomorphism(&g, &spec) {
                Ok(iso) => emit(&iso),
                Err(Error::Precondition(p)) => {
                    emit(&certify(&g, &spec))?;
                    eprintln!("group fails property ({p}); no canonical isomorphism");
                    Err(Failure::Check)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Iso { first, second } => {
            let g = load_group(&first, limit)?;
            let h = load_group(&second, limit)?;
            let iso = are_isomorphic(&g, &h)?;
            emit(&json!({ "isomorphic": iso.is_some(), "isomorphism": iso }))?;
            if iso.is_some() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::CatalogVerify {
            order,
            catalog: stored,
            rebuild,
            write_catalog,
        } => catalog_verify(order, stored, rebuild, write_catalog, limit),
        Command::Expected { c } => {
            let (g, labels) = expected_group_bounded(c, limit)?;
            write_json(&GroupJson::new(&g, Some(&labels)), false)
        }
    }
}

fn catalog_verify(
    order: usize,
    stored: Option<PathBuf>,
    rebuild: bool,
    write_catalog: Option<PathBuf>,
    limit: usize,
) -> Outcome {
    let entries: Vec<CatalogEntry> = match stored {
        Some(path) => {
            let file = File::open(&path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let lines = catalog::read_jsonl(BufReader::new(file))
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            if rebuild {
                catalog::rebuild(&lines, limit)?
            } else {
                let recipes: Vec<catalog::NamedRecipe> = lines
                    .into_iter()
                    .map(|s| catalog::NamedRecipe {
                        name: s.name,
                        recipe: s.recipe,
                    })
                    .collect();
                catalog::build_catalog_from(order, &recipes, limit)?
            }
        }
        None => {
            let recipes = catalog::builtin_recipes(order)
                .ok_or_else(|| Failure::Input(format!("no built-in catalog for order {order}")))?;
            catalog::build_catalog_from(order, &recipes, limit)?
        }
    };
    if let Some(path) = write_catalog {
        let file =
            File::create(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        catalog::write_jsonl(&entries, io::BufWriter::new(file))?;
    }
    let spec = builtin_spec_bounded(order, limit)?;
    match catalog::verify_uniqueness_over(order, &spec, &entries) {
        Ok(report) => emit(&report),
        Err(Error::UniquenessViolated(msg)) => {
            emit(&json!({ "order": order, "uniqueness_violated": msg }))?;
            Err(Failure::Check)
        }
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
