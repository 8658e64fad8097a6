fn main() {
    std::process::exit(geomeans::cli::run(std::env::args_os()));
}
