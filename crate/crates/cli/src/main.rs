fn main() {
    std::process::exit(spiked_runner::run(std::env::args()));
}
