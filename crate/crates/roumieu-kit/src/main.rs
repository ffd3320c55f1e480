fn main() {
    std::process::exit(roumieu_kit::cli::run_from_env());
}
