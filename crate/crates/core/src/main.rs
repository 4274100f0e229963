use std::io::Write;

fn main() {
    let out = sugawara::cli::run(std::env::args_os());
    if out.status == sugawara::cli::EXIT_PASS || out.status == sugawara::cli::EXIT_FAIL {
        print!("{}", out.output);
        std::io::stdout().flush().ok();
    } else {
        eprint!("{}", out.output);
    }
    std::process::exit(out.status);
}
