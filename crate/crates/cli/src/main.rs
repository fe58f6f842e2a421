use clap::Parser;
use pfq::{run_certificate, Cli, EXIT_ERROR};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = run_certificate(&cli.certificate, &cli.config)
        .and_then(|r| r.emit(cli.config.out.as_deref()).map(|_| r));
    match report {
        Ok(r) => ExitCode::from(r.verdict.exit_code()),
        Err(e) => {
            eprintln!("pfq: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
