use std::process::ExitCode;

fn main() -> ExitCode {
    let result = eqlines::cli::run(std::env::args_os());
    if !result.payload.is_empty() {
        print!("{}", result.payload);
        if !result.payload.ends_with('\n') {
            println!();
        }
    }
    if !result.diagnostics.is_empty() {
        eprintln!("{}", result.diagnostics);
    }
    ExitCode::from(result.exit_code as u8)
}
