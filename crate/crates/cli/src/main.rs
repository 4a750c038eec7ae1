use clap::Parser;

fn main() {
    let cli = twistlab_cli::Cli::parse();
    std::process::exit(twistlab_cli::run(cli));
}
