use clap::Parser;

use ipstab::cli::{cmd_oracle, cmd_run, cmd_sweep, Cli, Command};

fn main() {
    // Exit codes: 0 success, 1 configuration error, 2 input-data error,
    // 3 resource guard.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    if let Err(e) = result {
        eprintln!("ipstab: {e}");
        std::process::exit(e.exit_code());
    }
}
