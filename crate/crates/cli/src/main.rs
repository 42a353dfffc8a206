use clap::Parser;

fn main() {
    let cli = lccc_cli::Cli::parse();
    let (code, stdout, stderr) = lccc_cli::run(&cli);
    print!("{stdout}");
    eprint!("{stderr}");
    std::process::exit(code);
}
