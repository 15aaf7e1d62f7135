fn main() {
    std::process::exit(noncoherent_capacity::cli::run());
}
