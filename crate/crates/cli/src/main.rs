mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, FixturesCmd, VerifyCmd};
use output::{envelope, error_envelope, render, Outcome};

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Fixtures(_) => "fixtures gen",
        Command::Satake(_) => "satake",
        Command::LocalFactor(_) => "local-factor",
        Command::Lift(_) => "lift",
        Command::Cuspidality(_) => "cuspidality",
        Command::Hodge(args::HodgeCmd::Show { .. }) => "hodge show",
        Command::Hodge(args::HodgeCmd::Solve { .. }) => "hodge solve",
        Command::Critical(_) => "critical",
        Command::Gamma(_) => "gamma",
        Command::Lvalue(_) => "lvalue",
        Command::Verify(_) => "verify miyawaki",
        Command::Report(_) => "report",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fx = cli.fixtures.as_path();
    let result = match &cli.command {
        Command::Fixtures(FixturesCmd::Gen { out, prime_bound, terms }) => {
            commands::fixtures_gen(out.as_deref().unwrap_or(fx), *prime_bound, *terms)
        }
        Command::Satake(a) => commands::satake(fx, &a.label, a.p),
        Command::LocalFactor(a) => commands::local_factor(fx, a),
        Command::Lift(a) => commands::lift(fx, a),
        Command::Cuspidality(a) => commands::cuspidality(fx, a, cli.log_tol),
        Command::Hodge(h) => commands::hodge(h),
        Command::Critical(a) => commands::critical(a.k),
        Command::Gamma(a) => commands::gamma(a),
        Command::Lvalue(a) => commands::lvalue(fx, a),
        Command::Verify(VerifyCmd::Miyawaki) => commands::verify_miyawaki(fx, cli.log_tol),
        Command::Report(a) => commands::report(fx, a, cli.log_tol),
    };
    let name = command_name(&cli.command);
    let (doc, code) = match result {
        Ok(Outcome::Ok(v)) => (envelope(name, v), 0),
        Ok(Outcome::VerificationFailed(v)) => (envelope(name, v), 1),
        Err(f) => {
            eprintln!("spinlift {name}: {}", f.message());
            (error_envelope(name, &f), f.exit_code())
        }
    };
    print!("{}", render(&doc, cli.format));
    ExitCode::from(code)
}
