fn main() {
    std::process::exit(sawmix::cli::run());
}
