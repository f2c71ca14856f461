fn main() {
    std::process::exit(normal_field::cli::run(std::env::args_os()));
}
