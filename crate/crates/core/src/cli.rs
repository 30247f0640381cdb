//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.
//!
//! Exit codes: 0 guaranteed/true, 1 impossible/false, 2 unknown or
//! inconclusive, 3 input error, 4 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::decide::{self, CoveringStatus, DegreeStatus};
use crate::error::{Error, Result};
use crate::forms::serre_normal_form;
use crate::json;
use crate::lattice::{FormInvariants, GramMatrix};
use crate::oracle::{brute_force_embedding, SearchOutcome};
use crate::topology::{self, gram_from_framed_link, PRESET_NAMES};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-cover",
    version,
    about = "Isometric embeddings d·I_N into I_M and the branched coverings they give"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE", global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank, determinant, signature and parity of a Gram matrix.
    Classify {
        /// Gram matrix as inline JSON or a file.
        #[arg(long, value_name = "FILE|JSON")]
        gram: String,
        #[command(flatten)]
        out: Output,
    },
    /// Standard diagonal or E8/H representative of a unimodular form.
    NormalForm {
        /// Invariants, Gram matrix, framed link or preset name.
        #[arg(long, visible_alias = "form", value_name = "FORM")]
        source: String,
        #[command(flatten)]
        out: Output,
    },
    /// Which degrees d admit d·I_N into I_M, and which coverings follow.
    Decide {
        #[arg(long, value_name = "FORM")]
        source: String,
        #[arg(long, value_name = "FORM")]
        target: String,
        /// Report only this degree; the exit code then reflects it.
        #[arg(long)]
        degree: Option<u64>,
        /// Assert that the source manifold has no 1- or 3-handles.
        #[arg(long = "assume-no-1-3-handles")]
        assume_no_13_handles: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Construct an explicit embedding matrix between normal forms.
    Embed {
        #[arg(long, value_name = "FORM")]
        source: String,
        #[arg(long, value_name = "FORM")]
        target: String,
        #[arg(long)]
        degree: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Check an embedding certificate exactly.
    Verify {
        /// Embedding JSON, inline or a file.
        #[arg(value_name = "FILE|JSON")]
        certificate: String,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive search for an embedding between two Gram matrices.
    Search {
        #[arg(long, value_name = "FORM")]
        source: String,
        #[arg(long, value_name = "FORM")]
        target: String,
        #[arg(long)]
        degree: u64,
        /// Coordinate bound used when the target is indefinite.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Gram matrix of a framed link.
    FromLink {
        /// Framed-link JSON, inline or a file.
        #[arg(value_name = "FILE|JSON")]
        link: String,
        #[command(flatten)]
        out: Output,
    },
    /// Invariants of a named manifold; lists the names when none is given.
    Preset {
        name: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

/// A form given on the command line, before it is reduced to what a
/// subcommand needs.
enum FormInput {
    Invariants(FormInvariants),
    Gram(GramMatrix),
}

impl FormInput {
    fn invariants(&self) -> Result<FormInvariants> {
        match self {
            FormInput::Invariants(inv) => Ok(*inv),
            FormInput::Gram(g) => g.invariants(),
        }
    }

    fn gram(&self) -> Result<GramMatrix> {
        match self {
            FormInput::Invariants(inv) => serre_normal_form(inv),
            FormInput::Gram(g) => Ok(g.clone()),
        }
    }
}

fn load_json(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        json::parse(arg)
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        json::parse(&text)
    }
}

fn load_form(arg: &str) -> Result<FormInput> {
    if PRESET_NAMES.contains(&arg) {
        return Ok(match topology::preset_link(arg)? {
            Some(link) => FormInput::Gram(gram_from_framed_link(&link)?),
            None => FormInput::Invariants(topology::preset(arg)?),
        });
    }
    let v = load_json(arg)?;
    if v.get("gram").is_some() {
        Ok(FormInput::Gram(json::gram_from_json(&v)?))
    } else if v.get("framings").is_some() {
        Ok(FormInput::Gram(gram_from_framed_link(&json::framed_link_from_json(
            &v,
        )?)?))
    } else if v.get("b2_plus").is_some() {
        Ok(FormInput::Invariants(json::invariants_from_json(&v)?))
    } else {
        Err(Error::Parse(format!(
            "{arg}: expected invariants, a Gram matrix, a framed link or a preset name"
        )))
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::AllocationInfeasible(_) | Error::FrameNotFound(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn status_code(s: DegreeStatus) -> i32 {
    match s {
        DegreeStatus::Guaranteed => EXIT_TRUE,
        DegreeStatus::Impossible => EXIT_FALSE,
        DegreeStatus::Unknown => EXIT_UNKNOWN,
    }
}

fn pretty(v: &Value) -> String {
    json::render(v)
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `stdout` or the `-o` file. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let (result, out) = execute(cli.command);
    match result {
        Ok((text, code)) => {
            let written = match &out.output {
                Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            exit_code_for(&err)
        }
    }
}

fn execute(command: Command) -> (Result<(String, i32)>, Output) {
    match command {
        Command::Classify { gram, out } => (classify(&gram, out.json), out),
        Command::NormalForm { source, out } => (normal_form(&source, out.json), out),
        Command::Decide {
            source,
            target,
            degree,
            assume_no_13_handles,
            out,
        } => (
            decide_cmd(&source, &target, degree, assume_no_13_handles, out.json),
            out,
        ),
        Command::Embed {
            source,
            target,
            degree,
            out,
        } => (embed(&source, &target, degree), out),
        Command::Verify { certificate, out } => (verify(&certificate, out.json), out),
        Command::Search {
            source,
            target,
            degree,
            bound,
            out,
        } => (search(&source, &target, degree, bound, out.json), out),
        Command::FromLink { link, out } => (from_link(&link, out.json), out),
        Command::Preset { name, out } => (preset_cmd(name.as_deref(), out.json), out),
    }
}

fn classify(arg: &str, as_json: bool) -> Result<(String, i32)> {
    let g = json::gram_from_json(&load_json(arg)?)?;
    let det = g.determinant();
    let sig = g.signature();
    let parity = g.parity();
    let unimodular = g.is_unimodular();
    if as_json {
        let v = json!({
            "rank": g.rank(),
            "determinant": json::int_to_value(&det),
            "signature": [sig.n_plus, sig.n_zero, sig.n_minus],
            "parity": parity.as_str(),
            "unimodular": unimodular,
        });
        return Ok((pretty(&v), EXIT_TRUE));
    }
    let mut s = String::new();
    writeln!(s, "rank: {}", g.rank()).unwrap();
    writeln!(s, "determinant: {det}").unwrap();
    if sig.n_zero == 0 {
        writeln!(s, "signature: ({}, {})", sig.n_plus, sig.n_minus).unwrap();
    } else {
        writeln!(s, "signature: ({}, {}), {} null", sig.n_plus, sig.n_minus, sig.n_zero).unwrap();
    }
    writeln!(s, "parity: {}", parity.as_str()).unwrap();
    writeln!(s, "{}", if unimodular { "unimodular" } else { "not unimodular" }).unwrap();
    Ok((s, EXIT_TRUE))
}

fn normal_form(arg: &str, as_json: bool) -> Result<(String, i32)> {
    let inv = load_form(arg)?.invariants()?;
    let g = serre_normal_form(&inv)?;
    if as_json {
        return Ok((pretty(&json::gram_to_json(&g)), EXIT_TRUE));
    }
    Ok((format!("{inv}\n{}\n", g.matrix()), EXIT_TRUE))
}

fn decide_cmd(source: &str, target: &str, degree: Option<u64>, flag: bool, as_json: bool) -> Result<(String, i32)> {
    let n = load_form(source)?.invariants()?;
    let m = load_form(target)?.invariants()?;
    let Some(d) = degree else {
        let report = decide::covering_report(&n, &m, flag)?;
        let code = if report.embeddable { EXIT_TRUE } else { EXIT_FALSE };
        if as_json {
            return Ok((pretty(&json::report_to_json(&report)), code));
        }
        let mut s = String::new();
        writeln!(s, "source: {n}").unwrap();
        writeln!(s, "target: {m}").unwrap();
        writeln!(s, "embeddable for some degree: {}", report.embeddable).unwrap();
        if let Some(case) = report.case() {
            writeln!(s, "case: {case}").unwrap();
        }
        writeln!(s, "guaranteed degrees: {}", report.guaranteed).unwrap();
        for o in &report.obstructions {
            writeln!(s, "obstruction: {}", o.describe()).unwrap();
        }
        for (d, status) in &report.covering {
            match report.branch_regularity.get(d) {
                Some(r) if *status == CoveringStatus::GuaranteedCovering => {
                    writeln!(s, "d={d}: {}, branch set: {}", status.as_str(), r.as_str()).unwrap()
                }
                _ => writeln!(s, "d={d}: {}", status.as_str()).unwrap(),
            }
        }
        return Ok((s, code));
    };
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let status = decide::degree_status(&n, &m, d)?;
    let report = decide::covering_report_for(&n, &m, flag, &[d])?;
    let covering = report.covering[&d];
    let regularity = report.branch_regularity.get(&d).copied();
    if as_json {
        let v = json!({
            "degree": d,
            "embedding": status.as_str(),
            "covering": covering.as_str(),
            "branch_regularity": regularity.map(|r| r.as_str()),
            "obstructions": report
                .obstructions
                .iter()
                .filter(|o| o.applies_to(d))
                .map(|o| json!({ "kind": o.tag(), "detail": o.describe() }))
                .collect::<Vec<_>>(),
        });
        return Ok((pretty(&v), status_code(status)));
    }
    let mut s = String::new();
    match regularity {
        Some(r) if covering == CoveringStatus::GuaranteedCovering => {
            writeln!(s, "{}, branch set: {}", covering.as_str(), r.as_str()).unwrap()
        }
        _ => writeln!(s, "{}", covering.as_str()).unwrap(),
    }
    writeln!(s, "embedding at degree {d}: {}", status.as_str()).unwrap();
    for o in report.obstructions.iter().filter(|o| o.applies_to(d)) {
        writeln!(s, "obstruction: {}", o.describe()).unwrap();
    }
    Ok((s, status_code(status)))
}

fn embed(source: &str, target: &str, d: u64) -> Result<(String, i32)> {
    let n = load_form(source)?.invariants()?;
    let m = load_form(target)?.invariants()?;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    match decide::degree_status(&n, &m, d)? {
        DegreeStatus::Guaranteed => {
            let e = decide::construct_embedding(&n, &m, d)?;
            Ok((pretty(&json::embedding_to_json(&e)), EXIT_TRUE))
        }
        other => Ok((
            format!("{}: {}\n", Error::NotGuaranteed(d), other.as_str()),
            status_code(other),
        )),
    }
}

fn verify(arg: &str, as_json: bool) -> Result<(String, i32)> {
    let e = json::embedding_from_json(&load_json(arg)?)?;
    let ok = e.verify();
    let code = if ok { EXIT_TRUE } else { EXIT_FALSE };
    if as_json {
        return Ok((pretty(&json!({ "valid": ok, "degree": e.degree() })), code));
    }
    Ok((if ok { "OK\n" } else { "FAIL\n" }.to_string(), code))
}

fn search(source: &str, target: &str, d: u64, bound: u64, as_json: bool) -> Result<(String, i32)> {
    let n = load_form(source)?.gram()?;
    let m = load_form(target)?.gram()?;
    let outcome = brute_force_embedding(&n, &m, d, bound)?;
    let (status, code) = match &outcome {
        SearchOutcome::Found(_) => ("found", EXIT_TRUE),
        SearchOutcome::Impossible => ("impossible", EXIT_FALSE),
        SearchOutcome::NotFoundWithinBound { .. } => ("not-found-within-bound", EXIT_UNKNOWN),
    };
    if as_json {
        let v = json!({
            "status": status,
            "bound": bound,
            "embedding": outcome.embedding().map(json::embedding_to_json),
        });
        return Ok((pretty(&v), code));
    }
    let text = match &outcome {
        SearchOutcome::Found(e) => pretty(&json::embedding_to_json(e)),
        SearchOutcome::Impossible => "impossible: exhaustive search found no embedding\n".to_string(),
        SearchOutcome::NotFoundWithinBound { bound } => {
            format!("inconclusive: no embedding with coordinates bounded by {bound}\n")
        }
    };
    Ok((text, code))
}

fn from_link(arg: &str, as_json: bool) -> Result<(String, i32)> {
    let link = json::framed_link_from_json(&load_json(arg)?)?;
    let g = gram_from_framed_link(&link)?;
    if as_json {
        return Ok((pretty(&json::gram_to_json(&g)), EXIT_TRUE));
    }
    Ok((format!("{}\n", g.matrix()), EXIT_TRUE))
}

fn preset_cmd(name: Option<&str>, as_json: bool) -> Result<(String, i32)> {
    let Some(name) = name else {
        if as_json {
            return Ok((pretty(&json!(PRESET_NAMES)), EXIT_TRUE));
        }
        return Ok((PRESET_NAMES.iter().map(|n| format!("{n}\n")).collect(), EXIT_TRUE));
    };
    let inv = topology::preset(name)?;
    if as_json {
        return Ok((pretty(&json::invariants_to_json(&inv)), EXIT_TRUE));
    }
    let text = format!(
        "{name}: b2+ = {}, b2- = {}, parity {}\n",
        inv.b2_plus,
        inv.b2_minus,
        inv.parity.as_str()
    );
    Ok((text, EXIT_TRUE))
}
