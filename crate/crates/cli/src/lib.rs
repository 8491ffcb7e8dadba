//! Command-line front end for `camc-core`. [`run`] is the whole program with
//! its streams injected, so tests can drive it in-process.

pub mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Outcome};

/// Runs one invocation. `argv[0]` is the program name. Returns the exit status:
/// 0 success, 1 a failed certificate, 2 usage, domain or I/O errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let header = header_line(&argv);
    let (result, out_path) = match &cli.command {
        Command::Generate(a) => (commands::generate(a, &header), a.output.out.clone()),
        Command::Check(a) => (commands::check(a), a.output.out.clone()),
        Command::Integrate(a) => (commands::integrate_cmd(a), a.output.out.clone()),
        Command::Crosssection(a) => (commands::crosssection(a), a.output.out.clone()),
        Command::Energy(a) => (commands::energy(a), a.output.out.clone()),
    };
    match result.and_then(|o| emit(o, out_path.as_deref(), out)) {
        Ok((status, note)) => {
            if let Some(n) = note {
                let _ = writeln!(err, "{n}");
            }
            status
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            2
        }
    }
}

fn header_line(argv: &[OsString]) -> String {
    let rest: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    format!("camc-kit {} {}", env!("CARGO_PKG_VERSION"), rest.join(" ")).trim_end().to_string()
}

fn emit(o: Outcome, path: Option<&std::path::Path>, out: &mut dyn Write) -> Result<(i32, Option<String>), CliError> {
    match path {
        Some(p) => std::fs::write(p, o.body.as_bytes()).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => out.write_all(o.body.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok((o.status, o.note))
}
