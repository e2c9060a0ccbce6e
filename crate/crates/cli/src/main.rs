use clap::Parser;

fn main() {
    let cli = mta::args::Cli::parse();
    std::process::exit(mta::execute(&cli));
}
