fn main() {
    std::process::exit(leech_borsuk::cli::run(std::env::args_os()));
}
