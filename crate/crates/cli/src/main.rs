use std::io::Write;

use clap::Parser;

use lagquot_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
