fn main() {
    std::process::exit(nonparam::cli::run(std::env::args_os()));
}
