fn main() {
    std::process::exit(quivercalc::cli::main_from_env());
}
