fn main() -> std::process::ExitCode {
    timeline_coref::cli::main()
}
