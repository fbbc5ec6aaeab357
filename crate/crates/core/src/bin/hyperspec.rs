use clap::Parser;

fn main() {
    let cli = hyperspec::cli::Cli::parse();
    std::process::exit(hyperspec::cli::run(&cli));
}
