use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use ecgrowth_cli::commands::{cmd_analyze, cmd_batch, cmd_tables, cmd_verify_paper, CurveSource, FixtureSource, Io};

#[derive(Parser)]
#[command(name = "ecgrowth", version, about = "Torsion growth of rational elliptic curves over quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one curve.
    #[command(group(ArgGroup::new("curve").required(true).args(["coeffs", "label"])))]
    Analyze {
        /// Weierstrass coefficients a1,a2,a3,a4,a6.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// Row label in the fixture.
        #[arg(long)]
        label: Option<String>,
        /// Fixture file; defaults to the bundled table.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Analyze every curve of a fixture.
    Batch {
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare computed growth with every fixture row.
    VerifyPaper {
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the classification tables.
    Tables {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let mut io = Io { out: &mut out, err: &mut err };
    let code = match cli.command {
        Command::Analyze { coeffs, label, fixture, json } => {
            let source = match (coeffs, label) {
                (Some(c), _) => CurveSource::Coeffs(c),
                (None, Some(l)) => CurveSource::Label(l, FixtureSource { path: fixture }),
                (None, None) => unreachable!("clap requires one of --coeffs, --label"),
            };
            cmd_analyze(&source, json, &mut io)
        }
        Command::Batch { fixture, json, jobs } => cmd_batch(&FixtureSource { path: fixture }, json, jobs, &mut io),
        Command::VerifyPaper { fixture, jobs } => cmd_verify_paper(&FixtureSource { path: fixture }, jobs, &mut io),
        Command::Tables { json } => cmd_tables(json, &mut io),
    };
    ExitCode::from(code as u8)
}
