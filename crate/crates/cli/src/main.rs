use clap::Parser;
use pointgreen_cli::{run, Cli};
use std::io::Write;

fn main() {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if code == pointgreen_cli::EXIT_VALIDATION || code == pointgreen_cli::EXIT_NUMERIC {
        eprint!("{text}");
    } else {
        let _ = lock.write_all(text.as_bytes());
    }
    let _ = lock.flush();
    std::process::exit(code);
}
