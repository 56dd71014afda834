use std::io::Write;

fn main() {
    let outcome = cone_spectra_cli::run(std::env::args());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    std::io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    std::process::exit(outcome.code);
}
