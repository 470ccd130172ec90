mod args;
mod commands;
mod config;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status plus the error to report. `error` is `None` when the message
/// has already been printed.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: Option<anyhow::Error>,
}

pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_EMPTY: u8 = 3;
pub const EXIT_DOMAIN: u8 = 4;

impl Failure {
    fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: Some(error.into()),
        }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Self::new(EXIT_IO, error)
    }

    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self::new(EXIT_USAGE, error)
    }

    /// Maps a library error from a processing step to its exit status.
    pub fn classify(error: tortuo::Error) -> Self {
        use tortuo::Error as E;
        let code = match &error {
            E::Io(_) | E::Parse { .. } | E::Decode { .. } => EXIT_IO,
            E::Extraction(_) | E::DegenerateContour(_) => EXIT_EMPTY,
            E::Domain(_) => EXIT_DOMAIN,
            E::Validation(_) => EXIT_USAGE,
            E::Internal(_) => EXIT_IO,
        };
        Self::new(code, error)
    }
}

pub type CmdResult = Result<(), Failure>;

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("TORTUO_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::usage(anyhow::anyhow!(
            "TORTUO_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::new(EXIT_IO, e))
}

fn run() -> CmdResult {
    let argv = config::expand(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return Err(Failure {
                code: if e.use_stderr() { EXIT_USAGE } else { 0 },
                error: None,
            });
        }
    };
    configure_threads()?;
    let name = cli.command.name();
    match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Extract(a) => commands::extract(a),
        Command::Score(a) => commands::score(a),
        Command::Compare(a) => commands::compare(a),
        Command::Synth(a) => commands::synth(a),
    }
    .map_err(|mut f| {
        f.error = f.error.map(|e| e.context(format!("{name} failed")));
        f
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(e) = f.error {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(f.code)
        }
    }
}
