fn main() {
    std::process::exit(hyperalpha::cli::main());
}
