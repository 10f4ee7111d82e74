fn main() { std::process::exit(wlab::cli::main_entry()); }
