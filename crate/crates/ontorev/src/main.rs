fn main() -> std::process::ExitCode {
    ontorev::cli::main()
}
