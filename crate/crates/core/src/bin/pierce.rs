fn main() {
    std::process::exit(pierce_core::cli::main())
}
