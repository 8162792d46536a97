fn main() {
    std::process::exit(hopfkit::cli::main());
}
