fn main() {
    std::process::exit(kseeker::cli::run());
}
