fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(casimir_core::cli::run(&argv));
}
