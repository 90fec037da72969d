use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hsmult_cli::{run_command, CliError, Command, ErrorKind, Overrides, RunOptions};

/// Hilbert-Samuel multiplicities, minimal reductions and integral closure
/// membership.
#[derive(Parser, Debug)]
#[command(name = "hsmult", version)]
struct Args {
    /// dual | length | mult | reduce | member | selftest
    command: String,
    /// Instance file (JSON or text); optional for selftest.
    file: Option<PathBuf>,
    /// Expression for `member`.
    expr: Option<String>,

    /// Monomial order: glex, grevlex or lex.
    #[arg(long)]
    order: Option<String>,
    /// Modular kernels: on, off or auto.
    #[arg(long)]
    modp: Option<String>,
    /// Column count above which auto mode goes modular.
    #[arg(long)]
    modp_threshold: Option<usize>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    max_degree: Option<u64>,
    /// Largest absolute value tried in the reduction search.
    #[arg(long)]
    search_bound: Option<u32>,
    /// First truncation degree for series generators.
    #[arg(long)]
    trunc_degree: Option<u64>,
    /// Leave timing out of the report.
    #[arg(long)]
    no_timing: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let json = args.json;
    match run(args) {
        Ok((out, success)) => {
            print!("{}", out);
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("error serializes"));
            } else {
                eprintln!("{}", e);
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(args: Args) -> Result<(String, bool), CliError> {
    let cmd: Command = args.command.parse()?;
    let text = match &args.file {
        Some(p) => Some(
            std::fs::read_to_string(p)
                .map_err(|e| CliError::new(ErrorKind::Other, format!("cannot read {}: {}", p.display(), e)))?,
        ),
        None if cmd == Command::Selftest => None,
        None => return Err(CliError::new(ErrorKind::Other, "missing instance file")),
    };
    let name = args.file.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
    let opts = RunOptions {
        overrides: Overrides {
            order: args.order,
            modp: args.modp,
            modp_threshold: args.modp_threshold,
            max_terms: args.max_terms,
            max_degree: args.max_degree,
            search_bound: args.search_bound,
            trunc_degree: args.trunc_degree,
        },
        timing: !args.no_timing,
    };
    let input = text.as_deref().map(|t| (name.as_str(), t));
    let report = run_command(cmd, input, args.expr.as_deref(), &opts)?;
    let out = if args.json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    Ok((out, report.success))
}
