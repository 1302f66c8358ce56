use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use cyclofact_cli::{run, ErrorReport, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let report = ErrorReport {
                error: "usage".into(),
                message: e.render().to_string().trim_end().to_string(),
            };
            eprintln!("{}", serde_json::to_string(&report).expect("error report serializes"));
            return ExitCode::from(1);
        }
    };
    match run(&config) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f.report).expect("error report serializes"));
            ExitCode::from(f.code)
        }
    }
}
