mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use cfklab::rational::{self, Rational};
use cfklab::surgery::EngineConfig;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "cfklab", version, about = "Correction terms of knot surgeries and 2-knot obstructions")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Base truncation level (defaults to the floor of each input)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    truncation: Option<u32>,
    /// Number of doubled truncation levels that must agree
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    stability_rounds: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn engine(&self) -> EngineConfig {
        EngineConfig {
            truncation: self.truncation,
            stability_rounds: self.stability_rounds,
            ..EngineConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural and algebraic laws of CFK files
    Validate {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Zero-surgery correction terms with cross-checks
    Profile {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Certified V_s
    V0 {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, short, default_value_t = 0, allow_negative_numbers = true)]
        s: i64,
    },
    /// Twisted correction term of the zero-surgery from its mapping cone
    ConeD {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Correction term of a raw twisted complex (file or built-in name)
    TwistedD {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// 2-knot invariants and the obstructions they imply
    TwoKnot(TwoKnotArgs),
    /// Built-in knot complexes
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run every check over the catalog, the built-in raw complexes and any corpus directories
    CheckAll {
        /// Extra corpus directories (CFKLAB_CATALOG_DIR is also honoured)
        #[arg(long = "corpus")]
        corpus: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct TwoKnotArgs {
    /// Correction term of a rational homology sphere fiber
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true,
          conflicts_with_all = ["fiber_d_plus", "fiber_d_minus", "b1", "quadruple"])]
    qhs_d: Option<Rational>,
    /// Bottom twisted correction term of the fiber
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true,
          requires_all = ["fiber_d_minus", "b1"], conflicts_with = "quadruple")]
    fiber_d_plus: Option<Rational>,
    /// Bottom twisted correction term of the reversed fiber
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires_all = ["fiber_d_plus", "b1"])]
    fiber_d_minus: Option<Rational>,
    /// First Betti number of the fiber
    #[arg(long, requires_all = ["fiber_d_plus", "fiber_d_minus"])]
    b1: Option<u32>,
    /// The four invariants directly
    #[arg(long, num_args = 4, value_parser = parse_rational, allow_hyphen_values = true,
          value_names = ["D", "DR", "DBAR", "DBARR"])]
    quadruple: Option<Vec<Rational>>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.run.engine();
    let outcome = match cli.command {
        Command::Validate { inputs } => commands::validate(&inputs),
        Command::Profile { inputs } => commands::profile(&inputs, &config),
        Command::V0 { inputs, s } => commands::v_invariant(&inputs, s, &config),
        Command::ConeD { inputs } => commands::cone_d(&inputs, &config),
        Command::TwistedD { inputs } => commands::twisted_d(&inputs, &config),
        Command::TwoKnot(args) => commands::two_knot(
            args.qhs_d,
            args.fiber_d_plus.zip(args.fiber_d_minus).zip(args.b1).map(|((p, m), b)| (p, m, b)),
            args.quadruple,
        ),
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(),
        Command::Catalog { action: CatalogAction::Show { name } } => commands::catalog_show(&name),
        Command::CheckAll { corpus } => {
            let mut dirs = input::env_corpus_dirs();
            dirs.extend(corpus);
            commands::check_all(&dirs, &config)
        }
    };
    match output::emit(&outcome, cli.run.format, cli.run.out.as_deref()) {
        Ok(()) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("cfklab: cannot write output: {e}");
            ExitCode::from(2)
        }
    }
}
