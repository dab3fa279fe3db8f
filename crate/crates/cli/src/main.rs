//! `pisr`: command-line front end for rational series, skew extensions,
//! Leavitt algebras, K0 computations and generator realization.
//!
//! Exit status: 0 on success, 1 when a computation fails (for example a
//! non-invertible element or a rejected certificate), 2 on usage errors.

mod commands;
mod eval;
mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pisr::selftest::DEFAULT_SEED;

use commands::{Globals, Report};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "pisr", version, about = "Exact computations in rational series and Leavitt-type algebras")]
struct Cli {
    /// Scalar field: `q`, `fp:<p>` or `qt:<r>` (rational functions in t1..tr).
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Alphabet parameter. Series: letters x0..x(n-1). Skew: x0..xn, y0..yn.
    /// Leavitt: x1..xn, y1..yn. Defaults to what the input uses.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Coefficients are listed for words shorter than this.
    #[arg(long, global = true, default_value_t = 16)]
    precision: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Re-check a certificate previously printed by a `witness` command
    /// (`-` reads standard input).
    #[arg(long, global = true, value_name = "FILE")]
    verify_cert: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational series in the letters x_i.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// The skew extension with y letters and the idempotent e.
    #[command(subcommand)]
    Skew(SkewCmd),
    /// Leavitt algebras, letters from 1.
    #[command(subcommand)]
    Leavitt(LeavittCmd),
    /// Grothendieck groups of monoids and abelian quotients.
    #[command(subcommand)]
    K0(K0Cmd),
    /// Generator matrices for homomorphisms of cyclic groups.
    #[command(subcommand)]
    Realize(RealizeCmd),
    /// Runs the acceptance criteria.
    Selftest {
        /// Only these criteria (1 to 12).
        #[arg(long = "criterion", value_name = "ID")]
        criteria: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Minimal representation and leading coefficients.
    Eval { expr: String },
    Invert { expr: String },
    /// w ↦ r(w·x_i).
    Transduce {
        expr: String,
        #[arg(long)]
        letter: u32,
    },
    Equal { a: String, b: String },
}

#[derive(Subcommand)]
enum SkewCmd {
    Mul { a: String, b: String },
    /// Membership in the ideal generated by e.
    Member { expr: String },
    /// Equality modulo the ideal generated by e.
    Equal { a: String, b: String },
    /// m and g with m·a·g = 1 modulo the ideal.
    Witness { expr: String },
}

#[derive(Subcommand)]
enum LeavittCmd {
    /// Reduced form modulo e_n.
    Nf { expr: String },
    /// beta and gamma with beta·a·gamma = 1.
    Witness {
        expr: String,
        /// Work in the algebra on infinitely many letters instead.
        #[arg(long)]
        uinf: bool,
    },
}

#[derive(Subcommand)]
enum K0Cmd {
    /// Presentation such as `I | 3I = I` or `I, P | I = 2I + P`.
    Monoid {
        presentation: String,
        /// Also enumerate the monoid and report its shape.
        #[arg(long)]
        shape: bool,
        /// Element bound for the enumeration.
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Z^k modulo the rows of a matrix such as `2 0; 0 3`.
    Group {
        relations: String,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand)]
enum RealizeCmd {
    /// Builds and verifies the matrices for Z_from -> Z_to, 1 ↦ mult (0 means Z).
    Build {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, allow_negative_numbers = true)]
        mult: i64,
    },
    /// Verification report only.
    Verify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, allow_negative_numbers = true)]
        mult: i64,
    },
    /// Plans and verifies a chain read from JSON `{"groups": [...], "maps": [...]}`.
    Chain { plan: PathBuf },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let kind = cli
        .field
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown field `{}`", cli.field)))?;
    let g = Globals {
        kind,
        n: cli.n,
        precision: cli.precision,
        seed: cli.seed,
        verify_cert: cli.verify_cert.clone(),
    };
    let witness = matches!(
        cli.command,
        Command::Skew(SkewCmd::Witness { .. }) | Command::Leavitt(LeavittCmd::Witness { .. })
    );
    if g.verify_cert.is_some() && !witness {
        return Err(CliError::Usage("--verify-cert applies to witness commands".into()));
    }
    match &cli.command {
        Command::Series(c) => match c {
            SeriesCmd::Eval { expr } => commands::series_eval(&g, expr),
            SeriesCmd::Invert { expr } => commands::series_invert(&g, expr),
            SeriesCmd::Transduce { expr, letter } => commands::series_transduce(&g, expr, *letter),
            SeriesCmd::Equal { a, b } => commands::series_equal(&g, a, b),
        },
        Command::Skew(c) => match c {
            SkewCmd::Mul { a, b } => commands::skew_mul(&g, a, b),
            SkewCmd::Member { expr } => commands::skew_member(&g, expr),
            SkewCmd::Equal { a, b } => commands::skew_equal(&g, a, b),
            SkewCmd::Witness { expr } => commands::skew_witness(&g, expr),
        },
        Command::Leavitt(c) => match c {
            LeavittCmd::Nf { expr } => commands::leavitt_nf(&g, expr),
            LeavittCmd::Witness { expr, uinf } => commands::leavitt_witness(&g, expr, *uinf),
        },
        Command::K0(c) => match c {
            K0Cmd::Monoid {
                presentation,
                shape,
                bound,
            } => commands::k0_monoid(presentation, *shape, *bound),
            K0Cmd::Group { relations, k } => commands::k0_group(relations, *k),
        },
        Command::Realize(c) => match c {
            RealizeCmd::Build { from, to, mult } => commands::realize_build(&g, *from, *to, *mult),
            RealizeCmd::Verify { from, to, mult } => {
                commands::realize_verify(&g, *from, *to, *mult)
            }
            RealizeCmd::Chain { plan } => commands::realize_chain(&g, plan),
        },
        Command::Selftest { criteria } => commands::selftest(&g, criteria),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                println!("{}", report.text);
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Compute(_) => 1,
            })
        }
    }
}
