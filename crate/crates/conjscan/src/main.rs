fn main() {
    std::process::exit(conjscan::cli::run());
}
