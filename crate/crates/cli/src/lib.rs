//! Library side of the `horikawa` binary: argument types, scenarios,
//! command execution and report rendering.

pub mod args;
mod commands;
mod render;
pub mod report;
pub mod scenario;

use clap::Parser;

pub use commands::execute;
pub use render::render_text;

use args::{Cli, Format};
use scenario::{CommandSpec, Scenario};

/// Exit status for malformed invocations.
pub const USAGE_ERROR: i32 = 2;

/// What the binary should print and return.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage(message: String) -> Outcome {
    Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), code: USAGE_ERROR }
}

pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let scenario = match &cli.scenario {
        Some(path) => match Scenario::load(path) {
            Ok(s) => s,
            Err(e) => return usage(e),
        },
        None => Scenario::default(),
    };
    let command: CommandSpec = match (cli.command, scenario.command.clone()) {
        (Some(c), None) => c.into(),
        (None, Some(c)) => c,
        (Some(_), Some(_)) => return usage("give the command either on the command line or in the scenario, not both".into()),
        (None, None) => return usage("no command given; see --help".into()),
    };
    let format = cli.format.or(scenario.format).unwrap_or(Format::Text);
    let report = match execute(&command, &scenario.build_options()) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let code = report.exit_code();
    match format {
        Format::Json => Outcome { stdout: report.to_json() + "\n", stderr: String::new(), code },
        Format::Text => {
            let text = render_text(&report);
            if let report::Payload::Error { .. } = report.payload {
                Outcome { stdout: String::new(), stderr: text, code }
            } else {
                Outcome { stdout: text, stderr: String::new(), code }
            }
        }
    }
}
