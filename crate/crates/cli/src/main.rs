use clap::Parser;
use symcat_cli::run::{canonical_json, emit, execute, Cli, Command};

fn main() {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", emit(&outcome.report, cli.json));
            if let Command::TrainPinn { report: Some(path), .. } = &cli.command {
                let mut bytes = canonical_json(&outcome.report);
                bytes.push('\n');
                if let Err(e) = std::fs::write(path, bytes) {
                    eprintln!("symcat: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
            std::process::exit(outcome.exit);
        }
        Err(e) => {
            eprintln!("symcat: {e}");
            std::process::exit(2);
        }
    }
}
