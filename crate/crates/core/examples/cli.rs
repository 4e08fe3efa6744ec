//! Drives the command-line front end in-process, the way the binary does.
//!
//! ```text
//! cargo run --release --example cli -- trace --p 11
//! ```

fn main() {
    let mut args: Vec<String> = vec!["sporadic".into()];
    args.extend(std::env::args().skip(1));
    if args.len() == 1 {
        args.extend(["dim", "--k", "3", "--genus", "0", "--regular-cusps", "6"].map(String::from));
    }
    let code = sporadic::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
