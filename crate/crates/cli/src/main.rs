fn main() {
    std::process::exit(orbitlab::run(std::env::args_os()));
}
