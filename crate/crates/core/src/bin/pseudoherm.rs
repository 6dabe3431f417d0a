fn main() {
    std::process::exit(pseudoherm::cli::run(std::env::args_os()));
}
