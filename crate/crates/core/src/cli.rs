//! The `decomp` command line.
//!
//! Exit status: 0 when every requested check passes, 1 on a verification
//! failure (details as JSON on stderr), 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::Signature;
use crate::eigen::Failure;
use crate::error::Error;
use crate::report::{
    audit_exceptions, build_report, diff_golden, emit, matrix_cells, Check, DecompositionReport, Emit, GoldenDiff,
    GoldenExceptions, GoldenFile,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `d = p + q` accepted without `--allow-large`.
pub const MAX_D: usize = 40;

#[derive(Debug, Parser)]
#[command(
    name = "decomp",
    version,
    about = "Root and weight decompositions of so(p,q) in sl(p+q), with irreducibility certificates"
)]
pub struct Args {
    #[arg(long, required_unless_present = "range", conflicts_with = "range")]
    pub p: Option<usize>,
    #[arg(long, required_unless_present = "range", conflicts_with = "range")]
    pub q: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub check: Check,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Write the emission here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Compare the matrix tables with a golden file.
    #[arg(long, conflicts_with = "range")]
    pub golden: Option<PathBuf>,
    /// Documented corrections applied to the golden file before comparing.
    #[arg(long, requires = "golden")]
    pub exceptions: Option<PathBuf>,
    /// Every signature with q <= p, p <= PMAX, q <= QMAX and p + q >= 2.
    #[arg(long, num_args = 2, value_names = ["PMAX", "QMAX"])]
    pub range: Option<Vec<usize>>,
    /// Accept d = p + q above 40.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Serialize)]
struct FailureOutput<'a> {
    signature: String,
    failures: &'a [Failure],
    #[serde(skip_serializing_if = "Option::is_none")]
    golden: Option<&'a GoldenDiff>,
}

fn signatures(args: &Args) -> Result<Vec<Signature>, String> {
    let sigs = match (&args.range, args.p, args.q) {
        (Some(r), _, _) => {
            let (pmax, qmax) = (r[0], r[1]);
            let mut v: Vec<Signature> = Vec::new();
            for p in 0..=pmax {
                for q in 0..=qmax.min(p) {
                    if p + q >= 2 {
                        v.push(Signature::new(p, q).expect("d >= 2"));
                    }
                }
            }
            if v.is_empty() {
                return Err("--range selects no signature with d = p + q >= 2".into());
            }
            v
        }
        (None, Some(p), Some(q)) => match Signature::new(p, q) {
            Ok(s) => vec![s],
            Err(_) => return Err(format!("invalid signature ({p},{q}): d=p+q≥2 required")),
        },
        _ => return Err("--p and --q are required".into()),
    };
    if !args.allow_large {
        if let Some(s) = sigs.iter().find(|s| s.d() > MAX_D) {
            return Err(format!("d = {} exceeds {MAX_D}; pass --allow-large to run anyway", s.d()));
        }
    }
    Ok(sigs)
}

/// Runs the command with the given arguments (including the program name).
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let sigs = match signatures(&args) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };

    let golden = match &args.golden {
        None => None,
        Some(path) => {
            let g = GoldenFile::load(path);
            let e = match &args.exceptions {
                Some(ep) => GoldenExceptions::load(ep),
                None => Ok(GoldenExceptions::default()),
            };
            match (g, e) {
                (Ok(g), Ok(e)) => Some((g, e)),
                (Err(err), _) | (_, Err(err)) => {
                    let _ = writeln!(stderr, "error: {err}");
                    return EXIT_USAGE;
                }
            }
        }
    };

    let results: Vec<Result<DecompositionReport, Error>> =
        sigs.par_iter().map(|s| build_report(s, args.check)).collect();
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILURE;
            }
        }
    }

    let mut golden_diff = None;
    if let Some((g, e)) = &golden {
        let sig = reports[0].signature;
        if g.signature.p() == sig.p() && g.signature.q() == sig.q() {
            match audit_exceptions(&sig, g, e) {
                Ok(audits) => {
                    for a in audits.iter().filter(|a| !a.justified()) {
                        reports[0].failures.push(Failure::new(
                            "golden-exception",
                            a.cell.clone(),
                            format!("printed cell does not fail the {:?} check, or the replacement fails", a.check),
                        ));
                    }
                }
                Err(err) => {
                    let _ = writeln!(stderr, "error: {err}");
                    return EXIT_USAGE;
                }
            }
        }
        match diff_golden(&sig, &matrix_cells(&sig), g, e) {
            Ok(d) => {
                if !d.passed() {
                    let detail = if d.signature_match() {
                        format!(
                            "{} mismatched entries in {} cells; missing {:?}; unexpected {:?}",
                            d.mismatches.len(),
                            d.mismatched_cells().len(),
                            d.missing_cells,
                            d.unexpected_cells
                        )
                    } else {
                        format!("golden file is for {}, report is for {sig}", d.expected_signature)
                    };
                    reports[0].failures.push(Failure::new("golden", sig.to_string(), detail));
                }
                golden_diff = Some(d);
            }
            Err(err) => {
                let _ = writeln!(stderr, "error: {err}");
                return EXIT_USAGE;
            }
        }
    }

    let text = match (args.emit, reports.len()) {
        (Emit::Json, n) if n > 1 => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        (format, _) => reports.iter().map(|r| emit(r, format)).collect::<Vec<_>>().join("\n"),
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return EXIT_FAILURE;
    }

    let mut status = EXIT_OK;
    for r in &reports {
        if !r.passed() {
            status = EXIT_FAILURE;
            let out = FailureOutput {
                signature: r.signature.to_string(),
                failures: &r.failures,
                golden: golden_diff.as_ref().filter(|d| !d.passed()),
            };
            let _ = writeln!(stderr, "{}", serde_json::to_string(&out).expect("failures serialize"));
        }
    }
    status
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
