use std::io::Write;

fn main() {
    let (code, out) = klevel::cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout(), "{out}");
    std::process::exit(code);
}
