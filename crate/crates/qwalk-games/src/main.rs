fn main() {
    std::process::exit(qwalk_games::cli::main_entry());
}
