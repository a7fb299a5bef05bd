fn main() {
    std::process::exit(ontoaudit::cli::run(std::env::args_os()));
}
