use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use walg_cli::{
    act_cmd, bracket_cmd, classify_cmd, cobracket_cmd, cybe_check_cmd, derivations_cmd,
    invariants_cmd, read_input, search_r_cmd, skew_reduce_cmd, verify_bialgebra_cmd, CliError,
    Outcome, ReportFormat, TableSource,
};

#[derive(Parser)]
#[command(name = "walg", version, about = "Exact computations in the W-algebra W(2,2)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    report: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Verb {
    /// Bracket of two elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Diagonal adjoint action of an element on a tensor.
    Act {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        tensor: String,
    },
    /// Yang-Baxter operator c(r) and the generator witnesses.
    CybeCheck {
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// Coboundary cobracket x.r.
    Cobracket {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Lie bialgebra axioms for the coboundary of r or for a table file.
    VerifyBialgebra {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "table", required_unless_present = "table")]
        r: Option<String>,
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        window: u32,
        /// Radius of the symbols checked; defaults to the window minus two.
        #[arg(long)]
        check_radius: Option<i64>,
    },
    /// Derivations of a given degree modulo inner ones.
    Derivations {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long)]
        window: u32,
        #[arg(long)]
        modulo_cc: bool,
    },
    /// Invariants of a tensor power under the adjoint action.
    Invariants {
        #[arg(long)]
        power: usize,
        #[arg(long)]
        window: u32,
    },
    /// Decide whether a tensor is skew and recover a preimage under 1 - tau.
    SkewReduce {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        modulo_cc: bool,
    },
    /// Recover a triangular r-matrix from a cobracket table.
    Classify {
        #[arg(long)]
        table: String,
        #[arg(long)]
        window: u32,
    },
    /// Elementary wedges x^y satisfying CYBE (not exhaustive).
    SearchR {
        #[arg(long)]
        max_index: i64,
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let f = match cli.report {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    match cli.verb {
        Verb::Bracket { x, y } => bracket_cmd(&x, &y, f),
        Verb::Act { x, tensor } => act_cmd(&x, &tensor, f),
        Verb::CybeCheck { r } => cybe_check_cmd(&r, f),
        Verb::Cobracket { r, x } => cobracket_cmd(&r, &x, f),
        Verb::VerifyBialgebra {
            r,
            table,
            window,
            check_radius,
        } => match (r, table) {
            (Some(r), _) => verify_bialgebra_cmd(TableSource::R(&r), window, check_radius, f),
            (None, Some(path)) => {
                let text = read_input(&path)?;
                verify_bialgebra_cmd(TableSource::Table(&text), window, check_radius, f)
            }
            (None, None) => Err(CliError::Usage("one of --r or --table is required".into())),
        },
        Verb::Derivations {
            degree,
            window,
            modulo_cc,
        } => derivations_cmd(degree, window, modulo_cc, f),
        Verb::Invariants { power, window } => invariants_cmd(power, window, f),
        Verb::SkewReduce { v, modulo_cc } => skew_reduce_cmd(&v, modulo_cc, f),
        Verb::Classify { table, window } => classify_cmd(&read_input(&table)?, window, f),
        Verb::SearchR { max_index, degree } => search_r_cmd(max_index, degree, f),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
