//! Command-line driver for `cathom`: the interchange format, reports, and
//! the subcommands behind the `cathom` binary.

pub mod commands;
pub mod format;
pub mod report;

use std::sync::Once;

use clap::Parser;

pub use commands::{execute, Cli, CliError, OutputFormat};
pub use report::Report;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

static THREADS: Once = Once::new();

/// Caps the global thread pool at `CATHOM_THREADS`, once per process.
fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("CATHOM_THREADS") else { return Ok(()) };
    let n: usize =
        value.trim().parse().map_err(|_| format!("CATHOM_THREADS must be a positive integer, got `{value}`"))?;
    if n == 0 {
        return Err("CATHOM_THREADS must be a positive integer".into());
    }
    THREADS.call_once(|| {
        // a pool already built by an earlier call keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    });
    Ok(())
}

/// Runs a full command line (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Err(message) = configure_threads() {
        return failure(cli.format, &message);
    }
    let echo = args.iter().skip(1).cloned().collect();
    match execute(&cli, echo) {
        Ok(report) => {
            let stdout = match cli.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            Outcome { code: report.exit_code(), stdout, stderr: String::new() }
        }
        Err(e) => failure(cli.format, &e.to_string()),
    }
}

fn failure(format: OutputFormat, message: &str) -> Outcome {
    let stdout = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({ "error": message })).unwrap() + "\n",
        OutputFormat::Text => String::new(),
    };
    Outcome { code: 2, stdout, stderr: format!("error: {message}\n") }
}
