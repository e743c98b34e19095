//! Command-line front end: truncated Schur/Euler-Zagier zeta values, O-sums,
//! dual indices, the interpolated function I_k(s), duality verification, and
//! CSV sweeps along a line in the s-plane.
//!
//! Exit codes: 0 success; 1 duality verification completed with failing
//! points; 2 usage or parse errors (including out-of-domain evaluation
//! points); 3 inadmissible index; 4 no dual available for the shape;
//! 5 quadrature convergence failure.

mod parse;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use schur_ohno::indices::IndexError;
use schur_ohno::mzv::{osum_schur, zeta_schur, EvalError, EvalResult, TruncationConfig};
use schur_ohno::ohno::{
    ohno_schur, ohno_schur_quadrature, verify_duality, ComplexPoint, OhnoConfig,
};
use schur_ohno::{dual_tableau, DualRegistry, EZIndex, TableauIndex};

use parse::{format_parts, format_tableau_rows, parse_complex, parse_points, parse_tableau};

#[derive(Parser)]
#[command(
    name = "schur-ohno",
    version,
    about = "Schur multiple zeta values, O-sums, dual indices, and the interpolated Ohno function",
    after_help = "Exit codes: 0 ok, 1 failed duality points, 2 usage/parse, 3 inadmissible index, \
                  4 unsupported dual, 5 quadrature convergence failure."
)]
struct Cli {
    /// Worker threads (default: all cores); results are bitwise identical
    /// for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the command output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IndexArgs {
    /// Outer partition, comma-separated (e.g. 2,1).
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<u32>,
    /// Inner partition, comma-separated; trailing zeros are trimmed.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<u32>>,
    /// Exponent rows: rows separated by "/", entries by spaces, e.g. "1 2 / 2".
    #[arg(long, allow_hyphen_values = false)]
    k: String,
}

impl IndexArgs {
    fn tableau(&self) -> Result<TableauIndex, CliError> {
        parse_tableau(&self.lambda, self.mu.as_deref(), &self.k).map_err(CliError::usage)
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    Series,
    Quadrature,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated Schur multiple zeta value of a tableau index.
    Zeta {
        #[command(flatten)]
        index: IndexArgs,
        /// Truncation bound M on the summation entries.
        #[arg(long, env = "SCHUR_OHNO_MAX_ENTRY", default_value_t = 2000)]
        max_entry: u32,
    },
    /// Truncated O-sum: zeta values summed over all exponent bumps of total ell.
    Osum {
        #[command(flatten)]
        index: IndexArgs,
        /// Total bump distributed over the cells.
        #[arg(long)]
        ell: u32,
        #[arg(long, env = "SCHUR_OHNO_MAX_ENTRY", default_value_t = 2000)]
        max_entry: u32,
    },
    /// Dual of an Euler-Zagier index (--index) or a tableau index (--lambda/--k).
    Dual {
        /// Euler-Zagier exponent tuple, comma-separated (e.g. 1,2).
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["lambda", "mu", "k"])]
        index: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<u32>>,
        #[arg(long)]
        k: Option<String>,
    },
    /// The interpolated function I_k(s) at one point, Re(s) > -1.
    Ohno {
        #[command(flatten)]
        index: IndexArgs,
        /// Evaluation point: a, a+bi, or a-bi.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// series (default, Re(s) > -1) or quadrature (-1 < Re(s) < 0).
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[arg(long, env = "SCHUR_OHNO_MAX_ENTRY", default_value_t = 2000)]
        max_entry: u32,
        /// Absolute tolerance of the quadrature backend.
        #[arg(long, env = "SCHUR_OHNO_QTOL", default_value_t = 1e-10)]
        tol: f64,
    },
    /// Compares I_k(s) against the dual index point by point; emits CSV.
    VerifyDuality {
        #[command(flatten)]
        index: IndexArgs,
        /// Outer partition of an explicitly supplied dual tableau.
        #[arg(long, value_delimiter = ',', requires = "dual_k")]
        dual_lambda: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', requires = "dual_lambda")]
        dual_mu: Option<Vec<u32>>,
        /// Exponent rows of the dual tableau.
        #[arg(long, requires = "dual_lambda")]
        dual_k: Option<String>,
        /// Comma-separated evaluation points (e.g. "-0.5,0.25+0.5i").
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["re_from", "re_to", "re_step", "im"])]
        points: Option<String>,
        /// Sweep start (alternative to --points; needs --re-to and --re-step).
        #[arg(long, requires_all = ["re_to", "re_step"], allow_hyphen_values = true)]
        re_from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        re_to: Option<f64>,
        #[arg(long)]
        re_step: Option<f64>,
        /// Fixed imaginary part of the sweep line.
        #[arg(long, allow_hyphen_values = true)]
        im: Option<f64>,
        #[arg(long, env = "SCHUR_OHNO_MAX_ENTRY", default_value_t = 2000)]
        max_entry: u32,
        #[arg(long, env = "SCHUR_OHNO_QTOL", default_value_t = 1e-10)]
        tol: f64,
    },
    /// Tabulates I_k(s) along a horizontal line in the s-plane; emits CSV.
    Sweep {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, allow_hyphen_values = true)]
        re_from: f64,
        #[arg(long, allow_hyphen_values = true)]
        re_to: f64,
        #[arg(long)]
        re_step: f64,
        /// Fixed imaginary part of the line.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
        #[arg(long, env = "SCHUR_OHNO_MAX_ENTRY", default_value_t = 2000)]
        max_entry: u32,
        #[arg(long, env = "SCHUR_OHNO_QTOL", default_value_t = 1e-10)]
        tol: f64,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage<S: Into<String>>(message: S) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification_failed(failed: usize, total: usize) -> Self {
        CliError {
            code: 1,
            message: format!("duality check failed at {failed} of {total} point(s)"),
        }
    }
}

fn index_error_code(e: &IndexError) -> u8 {
    match e {
        IndexError::NotAdmissible(_) | IndexError::NotInId => 3,
        IndexError::UnsupportedShape => 4,
        _ => 2,
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        let code = match &e {
            EvalError::Index(ie) => index_error_code(ie),
            EvalError::OutsideW => 3,
            EvalError::Convergence { .. } => 5,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        CliError {
            code: index_error_code(&e),
            message: e.to_string(),
        }
    }
}

/// 15 significant digits, locale-independent.
fn fmt(x: f64) -> String {
    format!("{:.14e}", x)
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn emit(w: &mut dyn Write, text: &str) -> Result<(), CliError> {
    w.write_all(text.as_bytes())
        .map_err(|e| CliError::usage(format!("write failed: {e}")))
}

fn print_eval(w: &mut dyn Write, r: &EvalResult, method: Option<&str>) -> Result<(), CliError> {
    let mut text = String::new();
    if r.value.im == 0.0 && method.is_none() {
        text.push_str(&format!("value     = {}\n", fmt(r.value.re)));
    } else {
        text.push_str(&format!("re_value  = {}\n", fmt(r.value.re)));
        text.push_str(&format!("im_value  = {}\n", fmt(r.value.im)));
    }
    text.push_str(&format!("err_est   = {}\n", fmt(r.err_est)));
    text.push_str(&format!("max_entry = {}\n", r.max_entry));
    if let Some(m) = method {
        text.push_str(&format!("method    = {m}\n"));
    }
    emit(w, &text)
}

fn sweep_points(
    re_from: f64,
    re_to: f64,
    re_step: f64,
    im: f64,
) -> Result<Vec<ComplexPoint>, CliError> {
    if re_step.is_nan() || re_step <= 0.0 {
        return Err(CliError::usage("--re-step must be positive"));
    }
    if re_to < re_from {
        return Err(CliError::usage("--re-to must not be below --re-from"));
    }
    let mut out = Vec::new();
    let mut i = 0u32;
    loop {
        let re = re_from + i as f64 * re_step;
        if re > re_to + re_step * 1e-9 {
            break;
        }
        out.push(ComplexPoint::new(Complex64::new(re, im)).map_err(CliError::from)?);
        i += 1;
    }
    Ok(out)
}

fn complex_points(text: &str) -> Result<Vec<ComplexPoint>, CliError> {
    parse_points(text)
        .map_err(CliError::usage)?
        .into_iter()
        .map(|s| ComplexPoint::new(s).map_err(CliError::from))
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    let mut w = writer(&cli.out)?;

    match cli.command {
        Command::Zeta { index, max_entry } => {
            let k = index.tableau()?;
            let cfg = TruncationConfig::with_max_entry(max_entry)?;
            let r = zeta_schur(&k, cfg)?;
            print_eval(w.as_mut(), &r, None)?;
        }
        Command::Osum {
            index,
            ell,
            max_entry,
        } => {
            let k = index.tableau()?;
            let cfg = TruncationConfig::with_max_entry(max_entry)?;
            let r = osum_schur(&k, ell, cfg)?;
            print_eval(w.as_mut(), &r, None)?;
        }
        Command::Dual {
            index,
            lambda,
            mu,
            k,
        } => match (index, lambda, k) {
            (Some(exps), None, None) => {
                let ez = EZIndex::new(exps).map_err(CliError::from)?;
                let dual = ez.dual().map_err(CliError::from)?;
                emit(w.as_mut(), &format!("{dual}\n"))?;
            }
            (None, Some(lambda), Some(krows)) => {
                let idx = parse_tableau(&lambda, mu.as_deref(), &krows).map_err(CliError::usage)?;
                let dual = dual_tableau(&idx).map_err(CliError::from)?;
                let shape = dual.shape();
                emit(
                    w.as_mut(),
                    &format!("lambda = {}\n", format_parts(shape.lambda().parts())),
                )?;
                if !shape.mu().is_empty() {
                    emit(
                        w.as_mut(),
                        &format!("mu     = {}\n", format_parts(shape.mu().parts())),
                    )?;
                }
                emit(
                    w.as_mut(),
                    &format!("k      = {}\n", format_tableau_rows(&dual)),
                )?;
            }
            _ => {
                return Err(CliError::usage(
                    "give either --index or both --lambda and --k",
                ))
            }
        },
        Command::Ohno {
            index,
            s,
            method,
            max_entry,
            tol,
        } => {
            let k = index.tableau()?;
            let sv = parse_complex(&s).map_err(CliError::usage)?;
            let point = ComplexPoint::new(sv)?;
            let cfg = OhnoConfig::new(max_entry, tol, true)?;
            let (r, name) = match method {
                Method::Series => (ohno_schur(&k, &point, &cfg)?, "series"),
                Method::Quadrature => (ohno_schur_quadrature(&k, &point, &cfg)?, "quadrature"),
            };
            print_eval(w.as_mut(), &r, Some(name))?;
        }
        Command::VerifyDuality {
            index,
            dual_lambda,
            dual_mu,
            dual_k,
            points,
            re_from,
            re_to,
            re_step,
            im,
            max_entry,
            tol,
        } => {
            let k = index.tableau()?;
            let registry = DualRegistry::new();
            let dual = match (dual_lambda, dual_k) {
                (Some(dl), Some(dk)) => {
                    let d = parse_tableau(&dl, dual_mu.as_deref(), &dk).map_err(CliError::usage)?;
                    registry.register(k.clone(), d)?;
                    registry.dual_tableau(&k)?
                }
                (None, None) => registry.dual_tableau(&k)?,
                _ => return Err(CliError::usage("--dual-lambda and --dual-k go together")),
            };
            let pts = match (points, re_from) {
                (Some(p), None) => complex_points(&p)?,
                (None, Some(from)) => sweep_points(
                    from,
                    re_to.ok_or_else(|| CliError::usage("--re-to required"))?,
                    re_step.ok_or_else(|| CliError::usage("--re-step required"))?,
                    im.unwrap_or(0.0),
                )?,
                _ => return Err(CliError::usage("give either --points or a sweep range")),
            };
            let cfg = OhnoConfig::new(max_entry, tol, true)?;
            let report = verify_duality(&k, &dual, &pts, &cfg)?;
            let mut text = String::from(
                "re_s,im_s,re_lhs,im_lhs,re_rhs,im_rhs,abs_diff,err_lhs,err_rhs,pass\n",
            );
            for row in &report.rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    fmt(row.s.re),
                    fmt(row.s.im),
                    fmt(row.lhs.value.re),
                    fmt(row.lhs.value.im),
                    fmt(row.rhs.value.re),
                    fmt(row.rhs.value.im),
                    fmt(row.abs_diff),
                    fmt(row.lhs.err_est),
                    fmt(row.rhs.err_est),
                    row.pass
                ));
            }
            emit(w.as_mut(), &text)?;
            w.flush().ok();
            let failed = report.rows.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(CliError::verification_failed(failed, report.rows.len()));
            }
        }
        Command::Sweep {
            index,
            re_from,
            re_to,
            re_step,
            im,
            max_entry,
            tol,
        } => {
            let k = index.tableau()?;
            let pts = sweep_points(re_from, re_to, re_step, im)?;
            let cfg = OhnoConfig::new(max_entry, tol, true)?;
            let mut text = String::from("re_s,im_s,re_I,im_I,err_est,max_entry\n");
            for p in &pts {
                let r = ohno_schur(&k, p, &cfg)?;
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(p.s().re),
                    fmt(p.s().im),
                    fmt(r.value.re),
                    fmt(r.value.im),
                    fmt(r.err_est),
                    r.max_entry
                ));
            }
            emit(w.as_mut(), &text)?;
        }
    }
    w.flush()
        .map_err(|e| CliError::usage(format!("write failed: {e}")))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
