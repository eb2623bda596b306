use clap::Parser;
use std::io::Write;
use std::process::ExitCode;
use toric_gw_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code, ok) = run(&cli);
    if ok {
        print!("{text}");
        let _ = std::io::stdout().flush();
    } else {
        eprint!("{text}");
    }
    ExitCode::from(code)
}
