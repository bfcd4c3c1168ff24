fn main() {
    std::process::exit(charblocks::cli::main());
}
