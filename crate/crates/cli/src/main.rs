fn main() {
    std::process::exit(intlat::cli::main());
}
