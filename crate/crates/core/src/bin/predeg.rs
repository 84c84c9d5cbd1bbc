use std::process::ExitCode;

fn main() -> ExitCode {
    let out = quadric_predegree::cli::run(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
