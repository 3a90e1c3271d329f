use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtk_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = run(&cli);
    let written = match (&cli.out, out.status) {
        (Some(path), 0 | 1) => std::fs::write(path, &out.output),
        _ if out.status == 2 => std::io::stderr().write_all(out.output.as_bytes()),
        _ => std::io::stdout().write_all(out.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.status as u8)
}
