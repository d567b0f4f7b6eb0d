use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sullivan_cli::{
    cmd_attach, cmd_examples, cmd_model, cmd_verdict, load, CliError, Format, Output, Request,
};

/// Minimal Sullivan models, cell attachments and formality verdicts over Q.
#[derive(Parser)]
#[command(name = "sullivan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bigraded minimal model: generators, stages, d and ρ.
    Model(JobArgs),
    /// Cohomology of M_α, the class u and its decomposability.
    Attach(JobArgs),
    /// Formality verdict for the attachment (exit 0, 10 or 20).
    Verdict(JobArgs),
    /// List the bundled fixtures.
    Examples {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Bundled fixture id (see `sullivan examples`).
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// Job file in the sectioned format.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Model truncation N; the algebra is kept through N + 1.
    #[arg(long, value_name = "N")]
    truncation: Option<u32>,
    /// Treat the job as an even complex with cells in dimensions 2K and 4K.
    #[arg(long, value_name = "K")]
    even_complex: Option<u32>,
    /// Cell dimension, overriding the attach section.
    #[arg(long, value_name = "N")]
    cell: Option<u32>,
    /// α as `name = value, ...`, overriding the attach section.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    json: bool,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let (args, cmd): (JobArgs, fn(&_, _, _) -> _) = match cli.command {
        Command::Examples { json } => {
            return Ok(cmd_examples(if json { Format::Json } else { Format::Text }));
        }
        Command::Model(a) => (a, cmd_model),
        Command::Attach(a) => (a, cmd_attach),
        Command::Verdict(a) => (a, cmd_verdict),
    };
    let req = Request {
        fixture: args.fixture,
        input: args.input,
        truncation: args.truncation,
        even_complex: args.even_complex,
        cell: args.cell,
        alpha: args.alpha,
    };
    let job = load(&req)?;
    let format = if args.json {
        Format::Json
    } else {
        Format::Text
    };
    cmd(&job, req.truncation, format)
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 64 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
