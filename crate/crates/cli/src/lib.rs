//! `wphodge` command-line front end.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 not quasi-smooth, 3 consistency violation.

mod args;
mod certificate;
mod output;
mod render;

use std::ffi::OsString;
use std::fmt;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;

use wphodge::{HodgeError, PolyError, RingError};

pub use args::{Cli, Command, Format};
pub use certificate::canonical_json;
pub use render::markdown;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    NotQuasiSmooth(String),
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::NotQuasiSmooth(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::NotQuasiSmooth(m) => write!(f, "not quasi-smooth: {m}"),
            CliError::Consistency(m) => write!(f, "consistency violation: {m}"),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::NotQuasiSmooth | RingError::ZeroRing | RingError::Exhausted { .. } => {
                CliError::NotQuasiSmooth(e.to_string())
            }
            RingError::NotHomogeneous | RingError::WrongDegree { .. } => {
                CliError::Invalid(e.to_string())
            }
            RingError::SocleNotOneDimensional { .. } | RingError::DegreeOutOfBand { .. } => {
                CliError::Consistency(e.to_string())
            }
        }
    }
}

impl From<HodgeError> for CliError {
    fn from(e: HodgeError) -> Self {
        match e {
            HodgeError::Ring(r) => r.into(),
            HodgeError::NotContact(_)
            | HodgeError::DegreeMismatch(_)
            | HodgeError::InvalidComplexStructure(_) => CliError::Invalid(e.to_string()),
            HodgeError::Linalg(_) | HodgeError::Consistency(_) => {
                CliError::Consistency(e.to_string())
            }
        }
    }
}

/// Parses `argv`, runs the command, writes output, and returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wphodge: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let (mut doc, out) = match &cli.command {
        Command::Analyze(a) => (certificate::analyze(a, "analyze")?, &a.output),
        Command::Certify(a) => (certificate::certify(a)?, &a.output),
        Command::Fermat(a) => (certificate::fermat(a)?, &a.output),
        Command::Search(a) => (certificate::search(a)?, &a.output),
        Command::Report(a) => (certificate::load(&a.input)?, &a.output),
    };
    if out.timing {
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        doc["timing_ms"] = Value::from((ms * 1000.0).round() / 1000.0);
    }
    let text = match out.format {
        Format::Json => canonical_json(&doc),
        Format::Markdown => markdown(&doc),
    };
    match &out.out {
        Some(path) => output::write_atomic(path, &text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(CliError::from(RingError::NotQuasiSmooth).exit_code(), 2);
        assert_eq!(CliError::from(RingError::ZeroRing).exit_code(), 2);
        assert_eq!(CliError::from(RingError::NotHomogeneous).exit_code(), 1);
        assert_eq!(
            CliError::from(HodgeError::Consistency("x".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(HodgeError::Ring(RingError::NotQuasiSmooth)).exit_code(),
            2
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["wphodge", "fermat", "--degree", "10"]), 1);
        assert_eq!(run(["wphodge", "--version"]), 0);
    }
}
