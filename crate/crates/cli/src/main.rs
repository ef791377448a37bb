//! `chordspace` command-line tool.
//!
//! Exit codes: 0 verdict as expected, 1 verdict violated, 2 usage or input
//! error, 3 capacity exceeded.

mod args;
mod commands;
mod manifest;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let max = cli.max_order;
    match &cli.command {
        Command::Enumerate {
            order,
            framed,
            arc,
            format,
        } => commands::enumerate(*order, *framed, *arc, *format, max),
        Command::Dims {
            order,
            space,
            format,
            cache_dir,
        } => commands::dims(order, space, *format, cache_dir.as_deref(), max),
        Command::Relations { order, space, format } => commands::relations(*order, space, *format, max),
        Command::Check { check } => commands::check(check, max),
        Command::Render {
            diagram,
            file,
            format,
        } => commands::render(diagram.as_deref(), file.as_deref(), *format),
        Command::Weights { command } => commands::weights(command, max),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<chordspace::Error>() {
        Some(chordspace::Error::Capacity { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let started = Instant::now();
    let outcome = pool.install(|| run(&cli));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    if let Some(s) = &outcome.summary {
        eprintln!("{s}");
    }
    if let Some(path) = &cli.manifest {
        let m = manifest::RunManifest::new(&outcome, started.elapsed());
        if let Err(e) = m.write(path) {
            eprintln!("error: writing manifest: {e:#}");
            return ExitCode::from(2);
        }
    }
    if outcome.expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
