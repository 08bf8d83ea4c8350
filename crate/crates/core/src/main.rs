fn main() {
    let code = dhkin::cli::run(std::env::args_os());
    std::process::exit(code);
}
