fn main() {
    std::process::exit(paracert::cli::run(std::env::args_os()));
}
