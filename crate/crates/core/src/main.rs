fn main() {
    std::process::exit(bondmagic::cli::run(std::env::args_os()));
}
