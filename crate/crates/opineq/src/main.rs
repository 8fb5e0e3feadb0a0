fn main() {
    std::process::exit(opineq::run_cli(std::env::args_os()));
}
