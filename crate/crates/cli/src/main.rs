mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use compjac::invariant::CurveParams;
use compjac::verify::{Suite, VerifyConfig};
use compjac::Error;

use output::{Format, Output};

/// Exact combinatorics of compactified Jacobians of curves with Puiseux
/// exponents (nd, md, md+s).
#[derive(Parser, Debug)]
#[command(name = "compjac", version)]
struct Cli {
    /// Output format; `verify` defaults to json, everything else to plain.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, env = "COMPJAC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Curve {
    #[arg(short = 'n')]
    n: u32,
    #[arg(short = 'm')]
    m: u32,
    #[arg(short = 'd', default_value_t = 1)]
    d: u32,
}

#[derive(Args, Debug, Clone, Copy)]
struct Rect {
    #[arg(short = 'a')]
    a: u32,
    #[arg(short = 'b')]
    b: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincaré polynomial Σ t^(δ−dinv) over the nd × md Dyck paths.
    Poincare {
        #[command(flatten)]
        curve: Curve,
        /// Double every exponent (cohomological grading).
        #[arg(long)]
        cohomological: bool,
    },
    /// The q,t-Catalan polynomial of the a × b rectangle.
    QtCatalan {
        #[command(flatten)]
        rect: Rect,
    },
    /// Number of Dyck paths in the a × b rectangle.
    Count {
        #[command(flatten)]
        rect: Rect,
    },
    /// Every s-admissible subset with its dimension.
    Admissible {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 's', default_value_t = 1)]
        s: u32,
        /// Largest generator considered; the count is certified at twice this.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Equivalence classes of invariant subsets, or the class data of one subset.
    Classes {
        #[command(flatten)]
        curve: Curve,
        /// nd-generators indexed by residue, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gens: Option<Vec<i64>>,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Number of cabled Dyck paths, with the weight of each pattern.
    CabledCount {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 's')]
        s: u32,
    },
    /// Closed-form Euler characteristic for d = 2 and the families (2,q), (3,4), (3,5).
    Piontkowski {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 's')]
        s: u32,
    },
    /// Power series coefficients against Dyck path counts for d = 1..d.
    Bizley {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'd', default_value_t = 4)]
        d: u32,
    },
    /// Run verification suites, or the tableau identity for one (n, m, d).
    Verify {
        #[arg(long, default_value = "all", value_parser = suite_parser())]
        suite: String,
        /// Largest nd·md for the symmetry and specialization suites.
        #[arg(long, default_value_t = 48)]
        max_size: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(short = 'n', required_if_eq("suite", "identity"))]
        n: Option<u32>,
        #[arg(short = 'm', required_if_eq("suite", "identity"))]
        m: Option<u32>,
        #[arg(short = 'd', default_value_t = 1)]
        d: u32,
    },
}

fn suite_parser() -> PossibleValuesParser {
    let names = ["all", "identity"]
        .into_iter()
        .chain(Suite::ALL.iter().map(Suite::name));
    PossibleValuesParser::new(names.collect::<Vec<_>>())
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Invalid input exits with 2; failed verification or enumeration exits with 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundUnstable { .. }
        | Error::Pole
        | Error::InvalidDigraph(_)
        | Error::InvalidDecomposition(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn run(command: Command) -> compjac::Result<(Output, Format)> {
    let params = |c: Curve, s: u32| CurveParams::new(c.n, c.m, c.d, s);
    Ok(match command {
        Command::Poincare {
            curve,
            cohomological,
        } => (
            commands::poincare_cmd(curve.n, curve.m, curve.d, cohomological)?,
            Format::Plain,
        ),
        Command::QtCatalan { rect } => (commands::qt_catalan_cmd(rect.a, rect.b)?, Format::Plain),
        Command::Count { rect } => (commands::count_cmd(rect.a, rect.b)?, Format::Plain),
        Command::Admissible { curve, s, bound } => (
            commands::admissible_cmd(params(curve, s)?, bound)?,
            Format::Plain,
        ),
        Command::Classes { curve, gens, bound } => (
            commands::classes_cmd(params(curve, 1)?, gens, bound)?,
            Format::Plain,
        ),
        Command::CabledCount { curve, s } => (
            commands::cabled_count_cmd(params(curve, s)?)?,
            Format::Plain,
        ),
        Command::Piontkowski { n, m, s } => (commands::piontkowski_cmd(n, m, s)?, Format::Plain),
        Command::Bizley { n, m, d } => (commands::bizley_cmd(n, m, d)?, Format::Plain),
        Command::Verify {
            suite,
            max_size,
            seed,
            trials,
            n,
            m,
            d,
        } => {
            let output = if suite == "identity" {
                let (n, m) = (
                    n.expect("required by the parser"),
                    m.expect("required by the parser"),
                );
                commands::identity_cmd(n, m, d, trials, seed)?
            } else {
                commands::verify_cmd(
                    &suite,
                    &VerifyConfig {
                        max_size,
                        seed,
                        trials,
                    },
                )?
            };
            (output, Format::Json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let (output, default_format) = match run(cli.command) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = output.render(cli.format.unwrap_or(default_format));
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAILURE);
    }
    if output.success {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: verification failed");
        ExitCode::from(EXIT_FAILURE)
    }
}
