use clap::Parser;
use quatgro_cli::{render, run, Cli, CliError, Output};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    // Clap exits with code 2 on usage errors.
    let cli = Cli::parse_from(&argv);
    match run(&cli, argv) {
        Ok(out) => print!("{}", render(&out, cli.format)),
        Err(e) => {
            if let CliError::Certification { report, .. } = &e {
                print!(
                    "{}",
                    render(&Output::Report((**report).clone()), cli.format)
                );
            }
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
