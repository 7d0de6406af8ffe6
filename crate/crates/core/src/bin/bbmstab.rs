fn main() {
    std::process::exit(bbmstab::cli::main());
}
