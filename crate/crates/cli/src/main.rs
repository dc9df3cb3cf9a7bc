use clap::Parser;

fn main() {
    std::process::exit(neil_cli::run(neil_cli::Cli::parse()));
}
