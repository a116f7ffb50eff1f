fn main() {
    std::process::exit(sopq::cli::run());
}
