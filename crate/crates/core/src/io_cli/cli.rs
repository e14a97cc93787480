//! Command line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::bundled::load_complex;
use super::census::census;
use super::report::Report;
use super::table::{bundled_table, parse_knot_csv};
use crate::a0_delta::{delta_with, WindowPolicy};
use crate::cfk::{serialize_complex, GradedMap, KnotComplex, PhiIotaComplex};
use crate::connected::{connected_complex_seeded, s_nontrivial_seeded, GREEDY_SEED};
use crate::core_algebra::BitVec;
use crate::error::{Error, Result};
use crate::morphisms::{homotopic_endo, local_map_exists};
use crate::verdict::{
    verdict_delta_with, verdict_gompf_with, verdict_periodic_with, verdict_split_with, ComplexSource, KnotDescriptor,
    Settings,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "corkscrew", version, about = "Strong-cork verdicts from knot Floer complexes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Extra powers of U beyond the torsion bound when testing nontorsion.
    #[arg(long, global = true, env = "CORKSCREW_WINDOW_BUMP", default_value_t = 0)]
    pub window_bump: u32,
    /// Seed for the greedy connected-complex search.
    #[arg(long, global = true, default_value_t = GREEDY_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check structure, S3 type and the (φ, ι) axioms.
    Validate { file: String },
    /// The Sarkar map and its basic properties.
    Sarkar { file: String },
    /// δ with a witness cycle; with `--m`, also the δ verdict.
    Delta {
        file: String,
        #[arg(short = 'm', long = "m", allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// Whether s is homotopic to the identity on the connected complex.
    SNontrivial { file: String },
    /// The connected complex.
    Conn { file: String },
    Verdict {
        #[command(subcommand)]
        rule: VerdictCommand,
    },
    /// Thin knots of a table satisfying the arithmetic criterion, cross-checked homologically.
    Census {
        /// CSV path, or `bundled`.
        #[arg(long, default_value = "bundled")]
        table: String,
        #[arg(long, default_value_t = 8)]
        max_crossings: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerdictCommand {
    /// Swallow-follow twists `t_λ^i t_μ^j` on `Y_{K,m}`.
    Gompf {
        /// Knot name in the bundled table.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        knot: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(short = 'm', long = "m", allow_negative_numbers = true)]
        m: i64,
        #[arg(short = 'i', long = "i", allow_negative_numbers = true)]
        i: i64,
        #[arg(short = 'j', long = "j", allow_negative_numbers = true, default_value_t = 0)]
        j: i64,
    },
    /// Split diffeomorphism `φ1 # φ2`.
    Split {
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
        #[arg(short = 'm', long = "m", allow_negative_numbers = true)]
        m: i64,
    },
    /// Powers of a periodic involution stored as `phi`.
    Periodic {
        #[arg(long)]
        file: String,
        #[arg(short = 'm', long = "m", allow_negative_numbers = true)]
        m: i64,
        #[arg(short = 'i', long = "i", allow_negative_numbers = true)]
        i: i64,
    },
}

/// Parse `args` (including the program name), run, and write to `out` / `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", json!({"error": {"kind": e.kind(), "message": e.to_string()}})),
                Format::Text => format!("error: {e}\n"),
            };
            let _ = err.write_all(body.as_bytes());
            1
        }
    }
}

fn ids_of(ids: &[String], v: &BitVec) -> Vec<String> {
    v.ones().map(|i| ids[i].clone()).collect()
}

/// `{source: ["target", "U·target", ...]}`.
fn map_json(c: &KnotComplex, f: &GradedMap) -> Value {
    let mut m = serde_json::Map::new();
    for (g, h, mono) in f.entries() {
        let term = if mono.is_unit() {
            c.ids()[h].clone()
        } else {
            format!("{mono}·{}", c.ids()[h])
        };
        m.entry(c.ids()[g].clone())
            .or_insert_with(|| Value::Array(vec![]))
            .as_array_mut()
            .expect("array")
            .push(Value::String(term));
    }
    Value::Object(m)
}

fn execute(cli: &Cli) -> Result<Report> {
    let settings = Settings {
        window: WindowPolicy { bump: cli.window_bump },
        seed: cli.seed,
    };
    let new = |command: &str| Report::new(command, cli.seed, cli.window_bump);
    match &cli.command {
        Command::Validate { file } => {
            let x = load_complex(file)?;
            let report = x.complex().validate(true)?;
            x.check_axioms()?;
            let mut r = new("validate");
            r.inputs = json!({ "file": file });
            r.results = json!({
                "complex": x.name(),
                "generators": report.generators,
                "arrows": report.arrows,
                "s3_type": report.s3_type,
                "axioms": "iota^2 ~ s, phi iota ~ iota phi, phi invertible up to homotopy",
                "iota_complex": x.is_iota_complex(),
            });
            Ok(r)
        }
        Command::Sarkar { file } => {
            let x = load_complex(file)?;
            let c = x.complex();
            let s = c.sarkar_map();
            let id = c.identity();
            let mut r = new("sarkar");
            r.inputs = json!({ "file": file });
            r.results = json!({
                "complex": x.name(),
                "sarkar": map_json(c, &s),
                "chain_map": c.is_chain_map(c, &s),
                "square_homotopic_to_identity": homotopic_endo(c, &s.compose(&s), &id).is_ok(),
                "homotopic_to_identity": homotopic_endo(c, &s, &id).is_ok(),
            });
            Ok(r)
        }
        Command::Delta { file, m } => {
            let x = load_complex(file)?;
            let d = delta_with(&x, settings.window)?;
            let local = local_map_exists(&PhiIotaComplex::trivial(), &x, false)?.is_ok();
            if (d.delta == 0) != local {
                return Err(Error::ConsistencyViolation(format!(
                    "delta = {} disagrees with local map from the trivial complex ({local})",
                    d.delta
                )));
            }
            let ids = x.complex().ids();
            let mut r = new("delta");
            r.inputs = json!({ "file": file, "m": m });
            r.results = json!({
                "complex": x.name(),
                "delta": d.delta,
                "witness": {
                    "grading": d.witness.grading,
                    "x": ids_of(ids, &d.witness.x),
                    "y": ids_of(ids, &d.witness.y),
                    "z": ids_of(ids, &d.witness.z),
                },
                "window": d.window,
                "local_map_from_trivial": local,
            });
            if let Some(m) = m {
                r.verdicts.push(verdict_delta_with(&x, *m, &settings)?);
            }
            Ok(r)
        }
        Command::SNontrivial { file } => {
            let x = load_complex(file)?;
            let s = s_nontrivial_seeded(&x, settings.seed)?;
            let mut r = new("s-nontrivial");
            r.inputs = json!({ "file": file });
            r.results = json!({
                "complex": x.name(),
                "s_nontrivial": s.nontrivial,
                "method": s.method,
                "conn_shape": s.conn_shape,
                "conn_generators": s.conn_generators,
                "caveat": s.caveat,
                "obstruction": s.obstruction,
            });
            Ok(r)
        }
        Command::Conn { file } => {
            let x = load_complex(file)?;
            let c = connected_complex_seeded(&x, settings.seed)?;
            let conn: Value = serde_json::from_str(&serialize_complex(&c.conn))?;
            let mut r = new("conn");
            r.inputs = json!({ "file": file });
            r.results = json!({
                "complex": x.name(),
                "method": c.method,
                "shape": c.shape,
                "caveat": c.caveat,
                "generators": c.conn.len(),
                "conn": conn,
            });
            Ok(r)
        }
        Command::Verdict { rule } => verdict(rule, &settings, new("verdict")),
        Command::Census { table, max_crossings } => {
            let t = if table == "bundled" {
                bundled_table()
            } else {
                parse_knot_csv(Path::new(table))?
            };
            let result = census(&t, *max_crossings, &settings)?;
            let mut r = new("census");
            r.inputs = json!({ "table": table, "max_crossings": max_crossings });
            r.results = serde_json::to_value(&result)?;
            Ok(r)
        }
    }
}

fn verdict(rule: &VerdictCommand, settings: &Settings, mut r: Report) -> Result<Report> {
    match rule {
        VerdictCommand::Gompf { knot, file, m, i, j } => {
            let descriptor = match (knot, file) {
                (Some(name), _) => bundled_table()
                    .get(name)
                    .ok_or_else(|| Error::InvalidArgument(format!("knot `{name}` is not in the bundled table")))?
                    .descriptor()?,
                (None, Some(f)) => {
                    let x = load_complex(f)?;
                    let source = match f.strip_prefix("bundled:") {
                        Some(n) => ComplexSource::Bundled { name: n.to_string() },
                        None => ComplexSource::File { path: f.clone() },
                    };
                    KnotDescriptor::from_complex(x.name().to_string(), source, x)
                }
                (None, None) => return Err(Error::InvalidArgument("one of --knot or --file is required".into())),
            };
            r.command = "verdict gompf".into();
            r.inputs = json!({ "knot": descriptor, "m": m, "i": i, "j": j });
            r.verdicts.push(verdict_gompf_with(&descriptor, *m, *i, *j, settings)?);
        }
        VerdictCommand::Split { k1, k2, m } => {
            let (x1, x2) = (load_complex(k1)?, load_complex(k2)?);
            r.command = "verdict split".into();
            r.inputs = json!({ "k1": k1, "k2": k2, "m": m });
            r.verdicts.push(verdict_split_with(&x1, &x2, *m, settings)?);
        }
        VerdictCommand::Periodic { file, m, i } => {
            let x = load_complex(file)?;
            r.command = "verdict periodic".into();
            r.inputs = json!({ "file": file, "m": m, "i": i });
            r.verdicts.push(verdict_periodic_with(&x, *m, *i, settings)?);
        }
    }
    Ok(r)
}
