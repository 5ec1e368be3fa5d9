fn main() {
    let code = podforge_cli::run(std::env::args_os());
    std::process::exit(code);
}
