use clap::Parser;
use cyclejoin::cli::{run, RunConfig};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config) {
        Ok((output, code)) => {
            match &config.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, output + "\n") {
                        eprintln!("{{\"error\": \"cannot write {}: {e}\"}}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{output}"),
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            let msg = serde_json::json!({ "error": e.to_string() });
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "{msg}");
            ExitCode::from(2)
        }
    }
}
