fn main() {
    std::process::exit(curvedelta_cli::run(std::env::args_os()));
}
