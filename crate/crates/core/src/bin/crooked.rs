use clap::Parser;

fn main() {
    let cli = crooked::cli::Cli::parse();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    std::process::exit(crooked::cli::run(cli, &mut out, &mut err));
}
