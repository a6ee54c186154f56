use clap::error::ErrorKind;
use clap::Parser;
use dicke2::cli;

fn main() {
    let args = match cli::CliArgs::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = cli::run(&args) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
