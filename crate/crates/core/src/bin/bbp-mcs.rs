fn main() {
    std::process::exit(bbp_mcs::cli::run(std::env::args_os()));
}
