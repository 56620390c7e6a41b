use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kolmo_core::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "kolmo", version, about = "Invariant surfaces, Darboux integrals and Hamiltonian tests for Kolmogorov fields on spheres")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kolmogorov structure and sphere invariance of a field.
    Check {
        #[arg(long)]
        field: PathBuf,
        /// Expected dimension; must match the file.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cofactor of a surface by exact division.
    Cofactor {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        surface: String,
    },
    /// Darboux integrals and integrability certificate of a cubic field.
    Darboux {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        g: String,
    },
    /// Monomial first integrals of a cubic form.
    SyzygyFi {
        #[arg(long)]
        form: PathBuf,
    },
    /// Invariance of a hyperplane for a cubic form.
    ClassifyHyperplane {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a0: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    #[command(subcommand)]
    Construct(Construct),
    /// Hamiltonian test for a field, or the constraint space over cubic forms.
    Hamiltonian {
        #[arg(long, conflicts_with_all = ["constraint_space", "n"], required_unless_present = "constraint_space")]
        field: Option<PathBuf>,
        #[arg(long, requires = "n")]
        constraint_space: bool,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fixed-step RK4 trajectory (CSV in text mode).
    Integrate {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        steps: usize,
        /// Polynomial whose change along the trajectory is reported.
        #[arg(long)]
        watch: Vec<String>,
    },
    /// Randomized or exhaustive certification suites.
    Certify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Field with a linear first integral `a0 + sum a_i x_i`.
    LinearFi {
        #[arg(long, allow_hyphen_values = true)]
        a0: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        seed: PathBuf,
    },
    /// Completely integrable degree-m field on S^n.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        atilde: String,
    },
    /// Field assembled from a cubic form file.
    Cubic {
        #[arg(long)]
        form: PathBuf,
    },
}

/// Result of a command: both renderings plus the verdict.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// Text-mode diagnostics kept off stdout.
    pub notes: String,
    pub positive: bool,
}

fn dispatch(cli: &Cli) -> kolmo_core::Result<Report> {
    use commands as c;
    match &cli.command {
        Command::Check { field, dim } => c::check(field, *dim),
        Command::Cofactor { field, surface } => c::cofactor(field, surface),
        Command::Darboux { field, g } => c::darboux(field, g),
        Command::SyzygyFi { form } => c::syzygy_fi(form),
        Command::ClassifyHyperplane { form, a0, a } => c::classify_hyperplane(form, a0, a),
        Command::Construct(Construct::LinearFi { a0, a, seed }) => c::construct_linear_fi(a0, a, seed),
        Command::Construct(Construct::Complete { n, m, atilde }) => c::construct_complete(*n, *m, atilde),
        Command::Construct(Construct::Cubic { form }) => c::construct_cubic(form),
        Command::Hamiltonian { field: Some(field), .. } => c::hamiltonian_field(field),
        Command::Hamiltonian { n: Some(n), .. } => c::hamiltonian_space(*n),
        Command::Hamiltonian { .. } => Err(Error::InvalidInput(
            "give --field FILE or --constraint-space --n N".into(),
        )),
        Command::Integrate { field, x0, h, steps, watch } => c::integrate(field, x0, *h, *steps, watch),
        Command::Certify { suite, seed, instances } => c::certify(suite, *seed, *instances),
    }
}

/// Errors that are mathematical outcomes rather than bad input.
fn is_negative_verdict(e: &Error) -> bool {
    matches!(
        e,
        Error::NotInvariant(_)
            | Error::HypothesisFailed { .. }
            | Error::NonFinite { .. }
            | Error::DomainViolation { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let written = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("json")),
                Format::Text => {
                    eprint!("{}", report.notes);
                    write!(out, "{}", report.text)
                }
            };
            if written.is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if report.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_negative_verdict(&e) { 1 } else { 2 })
        }
    }
}
