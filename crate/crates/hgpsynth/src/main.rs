fn main() {
    std::process::exit(hgpsynth::cli::run(std::env::args().skip(1).collect()));
}
