fn main() {
    std::process::exit(orthocat::cli::run(std::env::args_os()));
}
