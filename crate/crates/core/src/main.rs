fn main() {
    std::process::exit(orrw::cli::main_with_args(std::env::args_os()));
}
