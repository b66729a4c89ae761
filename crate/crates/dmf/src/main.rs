fn main() {
    std::process::exit(dmf::cli::main_entry());
}
