fn main() {
    std::process::exit(riordan_cli::main_for(false));
}
