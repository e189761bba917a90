fn main() {
    std::process::exit(glsg::cli::run());
}
