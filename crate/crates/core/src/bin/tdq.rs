fn main() {
    std::process::exit(tdq::cli::run(std::env::args_os()));
}
