use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hallcomb::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Usage as u8
            } else {
                0
            });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("threads: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    }
    let out = run(&cli);
    if !out.stdout.is_empty() {
        // a closed pipe is not an error for a report printer
        let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    ExitCode::from(out.status as u8)
}
