fn main() {
    std::process::exit(wz_proofdesk::cli::run(std::env::args_os()));
}
