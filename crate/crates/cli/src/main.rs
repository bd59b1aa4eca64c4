use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use floergen_core::{Error, Field, Settings, DEFAULT_BUDGET, DEFAULT_SEED};
use serde_json::json;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "floergen", version, about = "Toric quantum cohomology, Jacobian rings, split-generation checks and A-infinity sign checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Polytope JSON file
    #[arg(long, global = true)]
    pub polytope: Option<PathBuf>,
    /// Laurent superpotential JSON file
    #[arg(long, global = true)]
    pub superpotential: Option<PathBuf>,
    /// A-infinity structure JSON file
    #[arg(long, global = true)]
    pub ainfty: Option<PathBuf>,
    /// Q or F<p>
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on S-pair reductions per Groebner basis
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl Opts {
    pub fn settings(&self) -> Settings {
        Settings { budget: self.budget, seed: self.seed }
    }

    pub fn field(&self) -> floergen_core::Result<Field> {
        self.field.as_deref().unwrap_or("Q").parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Plain,
    Mod2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Delzant conditions and monotonicity
    Validate,
    /// Classical and real-locus cohomology dimensions
    Cohomology,
    /// Superpotential of the monotone fibre
    Superpotential,
    /// Jacobian ring of a superpotential
    Jac,
    /// Quantum cohomology presentation
    Qh {
        #[arg(long, value_enum, default_value_t = Variant::Plain)]
        variant: Variant,
    },
    /// Closed-open map from quantum cohomology to the Jacobian ring
    Co0,
    /// Spectrum of multiplication by c1
    Spectrum,
    /// Local decomposition of the Jacobian ring over a prime field
    Decompose,
    /// Split-generation report, summand by summand
    ToricGen,
    /// Characteristic-two real-locus generation check
    RealGen,
    /// S / m^2 at the local system rho
    Smod2 {
        /// Comma-separated monodromy values
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        rho: Vec<String>,
    },
    /// A-infinity relations and Hochschild chain identities
    AinftyCheck {
        /// Cochain length cap
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
}

/// What a command produced: the text rendering, the JSON value, and whether an invariant failed.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub anomaly: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 2,
        Error::Anomaly(_) => 3,
        _ => 1,
    }
}

fn run(cli: &Cli) -> floergen_core::Result<Output> {
    let o = &cli.opts;
    match &cli.command {
        Command::Validate => commands::validate(o),
        Command::Cohomology => commands::cohomology(o),
        Command::Superpotential => commands::superpotential(o),
        Command::Jac => commands::jac(o),
        Command::Qh { variant } => commands::qh(o, *variant),
        Command::Co0 => commands::co0(o),
        Command::Spectrum => commands::spectrum(o),
        Command::Decompose => commands::decompose(o),
        Command::ToricGen => commands::toric_gen(o),
        Command::RealGen => commands::real_gen(o),
        Command::Smod2 { rho } => commands::smod2(o, rho),
        Command::AinftyCheck { length } => commands::ainfty_check(o, *length),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            let _ = match cli.opts.format {
                Format::Text => write!(stdout, "{}", out.text),
                Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            };
            ExitCode::from(if out.anomaly { 3 } else { 0 })
        }
        Err(e) => {
            match cli.opts.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}}))
                        .expect("serializable")
                ),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
