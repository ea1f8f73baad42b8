fn main() {
    std::process::exit(winshade::cli::run(std::env::args_os()));
}
