use std::io;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = pressing_game::cli::run_command(&argv, &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
