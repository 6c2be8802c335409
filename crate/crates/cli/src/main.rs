use clap::Parser;

fn main() {
    let cli = geoflow_cli::app::Cli::parse();
    match geoflow_cli::app::run(cli) {
        Ok(()) => {}
        Err(fault) => {
            eprintln!("{}", fault.stderr_line());
            std::process::exit(fault.exit);
        }
    }
}
