fn main() {
    std::process::exit(cutt::run_cli());
}
