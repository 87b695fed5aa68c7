fn main() {
    std::process::exit(polyfrenet::cli::run());
}
