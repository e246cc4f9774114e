fn main() {
    std::process::exit(qfridge::run(std::env::args_os()));
}
