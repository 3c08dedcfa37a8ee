fn main() {
    std::process::exit(surfmaps::cli::run(std::env::args_os()));
}
