fn main() {
    std::process::exit(pbda_cli::run(std::env::args()));
}
