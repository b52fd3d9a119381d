fn main() {
    std::process::exit(addpoly::cli::main_entry());
}
