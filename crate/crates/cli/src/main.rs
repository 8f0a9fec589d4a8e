//! `agcoh`: command-line access to the cohomology computations.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use agcoh::tables::StableSpace;
use agcoh::Error;
use clap::{Parser, Subcommand, ValueEnum};

use commands::SignsArg;
use output::Format;

#[derive(Parser)]
#[command(name = "agcoh", version, about = "Cohomology of moduli of abelian varieties")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    /// Directory for cached weight multiplicities (default: $AGCOH_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of the tautological ring R_g.
    Taut {
        #[arg(long)]
        g: usize,
        /// Also check the Gorenstein pairing and the quotient by the top generator.
        #[arg(long)]
        pairing: bool,
    },
    /// Top intersection numbers of lambda classes.
    Intersect {
        #[arg(long)]
        g: usize,
    },
    /// Volume and modular form growth constants.
    Modforms {
        #[arg(long)]
        g: usize,
    },
    /// Conjugacy classes of torsion elements of Sp(2g, Z).
    Torsion {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        mod_negation: bool,
    },
    /// Elliptic term of the trace formula for a local system.
    Euler {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        /// Mass table (default: $AGCOH_DATA_DIR/masses_g{g}.tsv).
        #[arg(long)]
        masses: Option<PathBuf>,
        /// Treat classes missing from the mass table as mass zero.
        #[arg(long)]
        lenient: bool,
    },
    /// Arthur parameters contributing to a local system.
    Arthur {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Intersection cohomology of the Satake compactification.
    Ih {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Sign file, `default`, or `both`.
        #[arg(long, default_value = "default")]
        signs: String,
        #[arg(long)]
        hodge: bool,
    },
    /// Published reference tables.
    Tables {
        #[arg(long)]
        id: Option<String>,
    },
    /// Stable cohomology series.
    Stable {
        #[arg(long, value_enum, default_value = "ag")]
        space: SpaceArg,
        /// Number of factors for `--space universal`.
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Ag,
    Sat,
    Universal,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Taut { .. } => "taut",
            Command::Intersect { .. } => "intersect",
            Command::Modforms { .. } => "modforms",
            Command::Torsion { .. } => "torsion",
            Command::Euler { .. } => "euler",
            Command::Arthur { .. } => "arthur",
            Command::Ih { .. } => "ih",
            Command::Tables { .. } => "tables",
            Command::Stable { .. } => "stable",
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Validation(_) => "validation",
        Error::GenusMismatch { .. } => "genus_mismatch",
        Error::DegreeMismatch { .. } => "degree_mismatch",
        Error::InvalidHighestWeight(_) => "invalid_highest_weight",
        Error::InvalidClass { .. } => "invalid_class",
        Error::MassTable { .. } => "mass_table",
        Error::MissingClasses(_) => "missing_classes",
        Error::NonIntegralCharacter(_) => "non_integral_character",
        Error::ResourceLimit(_) => "resource_limit",
        Error::Registry(_) => "registry",
        Error::RegistryIncomplete { .. } => "registry_incomplete",
        Error::InvalidBlock(_) => "invalid_block",
        Error::Spin(_) => "spin",
        Error::MissingSign { .. } => "missing_sign",
        Error::NotSl2Character(_) => "not_sl2_character",
        Error::Hodge(_) => "hodge",
        Error::UnknownTable(_) => "unknown_table",
        Error::Cache(_) => "cache",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_)
        | Error::GenusMismatch { .. }
        | Error::DegreeMismatch { .. }
        | Error::InvalidHighestWeight(_)
        | Error::UnknownTable(_)
        | Error::ResourceLimit(_) => 2,
        Error::InvalidClass { .. }
        | Error::MassTable { .. }
        | Error::MissingClasses(_)
        | Error::Registry(_)
        | Error::InvalidBlock(_)
        | Error::MissingSign { .. }
        | Error::Cache(_)
        | Error::Io(_)
        | Error::Json(_) => 3,
        Error::RegistryIncomplete { .. } => 4,
        Error::NonIntegralCharacter(_) | Error::Spin(_) | Error::NotSl2Character(_) | Error::Hodge(_) => 1,
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    let doc = output::error_document(kind, message, code as i32);
    eprintln!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
    ExitCode::from(code)
}

fn run(cli: &Cli) -> agcoh::Result<output::Outcome> {
    let cache = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Taut { g, pairing } => commands::taut(*g, *pairing),
        Command::Intersect { g } => commands::intersect(*g),
        Command::Modforms { g } => commands::modforms(*g),
        Command::Torsion { g, mod_negation } => commands::torsion(*g, *mod_negation),
        Command::Euler { g, lambda, masses, lenient } => {
            commands::euler(*g, lambda.as_deref(), masses.as_deref(), *lenient, cache)
        }
        Command::Arthur { g, lambda, registry } => commands::arthur(*g, lambda.as_deref(), registry.as_deref()),
        Command::Ih { g, lambda, registry, signs, hodge } => {
            commands::ih(*g, lambda.as_deref(), registry.as_deref(), &SignsArg::parse(signs), *hodge)
        }
        Command::Tables { id } => commands::tables(id.as_deref()),
        Command::Stable { space, n, max_degree } => {
            let space = match space {
                SpaceArg::Ag => StableSpace::Ag,
                SpaceArg::Sat => StableSpace::Sat,
                SpaceArg::Universal => StableSpace::Universal(*n),
            };
            commands::stable(space, *max_degree)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.to_string().trim_end(), 2);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = output::render(cli.command.name(), &outcome, cli.format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(error_kind(&e), &e.to_string(), exit_code(&e)),
    }
}
