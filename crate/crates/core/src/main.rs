use clap::Parser;

fn main() {
    let cli = sngof::cli::Cli::parse();
    std::process::exit(sngof::cli::run(cli));
}
