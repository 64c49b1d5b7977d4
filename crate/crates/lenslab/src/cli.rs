//! Command-line frontend. Exit codes: 0 success, 2 invalid input, 3 engine
//! precondition violated.

use crate::classify::{classify_all, evaluate_row, DEFAULT_M_BOUND};
use crate::exactlat::fmt_rational;
use crate::lens::LensSpace;
use crate::plumbing::{PlumbingError, PlumbingGraph};
use crate::simpleknot::cone_diagram;
use crate::surgery::{h1_null, h1_order, is_spin_cobordism, SurgeryProblem};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lenslab", about = "Correction terms and distance one surgery obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// d(L(p,q), i), or every index when i is omitted
    DLens {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        q: i64,
        i: Option<i64>,
    },
    /// d-invariants of the boundary of a plumbing given as JSON
    DPlumbing { file: std::path::PathBuf },
    /// |pm - k^2| and whether the cobordism is Spin
    H1 {
        p: i64,
        k: i64,
        #[arg(allow_hyphen_values = true)]
        m: i64,
    },
    /// Mapping cone signs of one class
    Cone {
        p: i64,
        k: i64,
        #[arg(allow_hyphen_values = true)]
        m: i64,
        r: i64,
    },
    /// Verdict for (mμ+λ)-surgery with winding number k giving L(n,1)
    Obstruct {
        p: i64,
        k: i64,
        #[arg(allow_hyphen_values = true)]
        m: i64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Full classification report
    Classify {
        p: i64,
        #[arg(long, default_value_t = DEFAULT_M_BOUND)]
        m_bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure(i32, String);

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

fn plumbing_failure(e: PlumbingError) -> Failure {
    match e {
        PlumbingError::PreconditionViolated(_)
        | PlumbingError::ClassWithoutMaximiser(_)
        | PlumbingError::CycleDetected
        | PlumbingError::BoxTooLarge(_)
        | PlumbingError::EmptyBox(_) => Failure(EXIT_PRECONDITION, e.to_string()),
        _ => invalid(e),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("LENSLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure(1, e.to_string());
    match cmd {
        Command::DLens { p, q, i } => {
            let l = LensSpace::new(p, q).map_err(invalid)?;
            match i {
                Some(i) => writeln!(out, "{}", fmt_rational(&l.d(i).map_err(invalid)?)).map_err(io)?,
                None => {
                    for (i, d) in l.d_all().iter().enumerate() {
                        writeln!(out, "{i} {}", fmt_rational(d)).map_err(io)?;
                    }
                }
            }
        }
        Command::DPlumbing { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| invalid(format!("{}: {e}", file.display())))?;
            let g = PlumbingGraph::from_json(&text).map_err(invalid)?;
            let t = g.d_plumbed().map_err(plumbing_failure)?;
            writeln!(out, "det {} classes {}", t.lattice().det(), t.len()).map_err(io)?;
            for e in &t.entries {
                let v: Vec<String> = e.class.canonical.iter().map(|x| x.to_string()).collect();
                let sc = if t.lattice().is_self_conjugate(&e.class.canonical) { " self-conjugate" } else { "" };
                writeln!(out, "({}) {}{sc}", v.join(","), fmt_rational(&e.d)).map_err(io)?;
            }
        }
        Command::H1 { p, k, m } => {
            let sp = SurgeryProblem::new(p, k, m).map_err(invalid)?;
            if k == 0 {
                writeln!(out, "{} null", h1_null(p, m).order()).map_err(io)?;
            } else {
                let order = h1_order(&sp).map_err(invalid)?;
                let spin = is_spin_cobordism(&sp).map_err(invalid)?;
                writeln!(out, "{order} spin={spin}").map_err(io)?;
            }
        }
        Command::Cone { p, k, m, r } => {
            let d = cone_diagram(p, k, m, r).map_err(invalid)?;
            writeln!(out, "{}", d.render()).map_err(io)?;
        }
        Command::Obstruct { p, k, m, n } => {
            let sp = SurgeryProblem::new(p, k, m).map_err(invalid)?;
            let order = if k == 0 { h1_null(p, m).order() } else { h1_order(&sp).map_err(invalid)? };
            if n == 0 || n.unsigned_abs() != order {
                return Err(invalid(format!("|n| = {} but the surgered manifold has |H1| = {order}", n.abs())));
            }
            if k == 0 && (m % p == 0) {
                return Err(invalid("H1 is not cyclic"));
            }
            let row = evaluate_row(p, k, m, n);
            writeln!(out, "{} [{}] {}", row.verdict.label(), row.engine, row.verdict.detail()).map_err(io)?;
        }
        Command::Classify { p, m_bound, format } => {
            let r = classify_all(p, m_bound).map_err(invalid)?;
            let s = match format {
                Format::Json => r.to_json() + "\n",
                Format::Csv => r.to_csv(),
                Format::Text => r.to_text(),
            };
            out.write_all(s.as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

/// Run with `args[0]` as the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
