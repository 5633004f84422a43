fn main() {
    std::process::exit(seqgme_cli::main_with_args(std::env::args_os().collect()));
}
