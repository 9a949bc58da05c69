use clap::Parser;
use stabletree_cli::commands::Cli;
use stabletree_cli::error::{exit, CliError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors and 0 for --help/--version
            std::process::exit(e.exit_code());
        }
    };
    match stabletree_cli::run(cli) {
        Ok(()) => std::process::exit(exit::OK),
        Err(e) => {
            eprintln!("stabletree: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `stabletree --help` for usage");
            }
            std::process::exit(e.exit_code());
        }
    }
}
