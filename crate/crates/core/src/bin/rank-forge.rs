use std::io::Write;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RANK_FORGE_LOG", "error"))
        .format_timestamp(None)
        .init();
    let outcome = rank_forge::cli::main_with_args(std::env::args_os());
    // a closed stdout pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
