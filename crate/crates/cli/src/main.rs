use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dopcalc_cli::{execute, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(report.render(cli.format).as_bytes()) {
                eprintln!("error: writing the report: {e}");
                return ExitCode::from(2);
            }
            if report.status == Status::Failed {
                eprintln!("error: a comparison found mismatching cells");
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
