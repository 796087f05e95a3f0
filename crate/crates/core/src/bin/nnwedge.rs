fn main() {
    std::process::exit(nnwedge::cli::run(std::env::args_os()));
}
