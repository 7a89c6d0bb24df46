use std::process::ExitCode;

use clap::Parser;

use howelab_cli::{persist_report, run, Cli, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = &outcome.report;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for c in &report.checks {
        eprintln!(
            "{} {} measured={:e}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.id,
            c.measured
        );
    }
    match persist_report(report) {
        Ok((_, Some(path))) => eprintln!("report written to {}", path.display()),
        Ok((json, None)) => println!("{json}"),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
