fn main() {
    std::process::exit(momentsolve::cli::run());
}
