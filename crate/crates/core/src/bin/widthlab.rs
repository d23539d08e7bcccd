use std::io::Write;

use clap::Parser;

fn main() {
    let response = widthlab::cli::run(&widthlab::cli::Cli::parse());
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout(), "{}", response.render());
    std::process::exit(response.code);
}
