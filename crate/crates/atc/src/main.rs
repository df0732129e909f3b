fn main() -> std::process::ExitCode {
    atc::cli::main()
}
