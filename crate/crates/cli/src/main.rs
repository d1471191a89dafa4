fn main() {
    let out = cli::run(std::env::args().collect());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
