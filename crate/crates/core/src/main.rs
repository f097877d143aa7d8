fn main() {
    std::process::exit(circuitwalk::cli::run(std::env::args_os()));
}
