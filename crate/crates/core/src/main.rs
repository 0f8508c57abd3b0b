use std::io::Write;

fn main() {
    let r = rigkit::cli::dispatch(std::env::args_os());
    if r.exit_code == rigkit::cli::EXIT_USAGE {
        eprint!("{}", r.payload);
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(r.payload.as_bytes());
        let _ = out.flush();
    }
    std::process::exit(r.exit_code);
}
