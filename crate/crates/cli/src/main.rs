use std::process::ExitCode;

use clap::Parser;
use weilmono_cli::{error_value, exit_code, render, run, verbosity, Cli, Format};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let err = serde_json::json!({"error": {"kind": "usage", "message": msg.trim_end()}});
            println!("{}", render(&err, Format::Json));
            return ExitCode::from(2);
        }
    };
    match run(&cli, argv[1..].to_vec()) {
        Ok(report) => {
            println!("{}", render(&report.to_value(verbosity()), cli.format).trim_end());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            println!("{}", render(&error_value(&e), cli.format).trim_end());
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
