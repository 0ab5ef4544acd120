fn main() {
    std::process::exit(legcard::cli::run());
}
