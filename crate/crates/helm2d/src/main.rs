fn main() {
    std::process::exit(helm2d::cli::run(std::env::args_os()));
}
