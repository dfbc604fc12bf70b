fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(zeta_discrete::cli::run(&argv));
}
