fn main() {
    std::process::exit(bcl::cli::run(std::env::args_os()));
}
