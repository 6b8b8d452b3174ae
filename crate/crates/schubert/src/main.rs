fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    eprintln!("cli not wired yet: {args:?}");
    std::process::exit(1);
}
