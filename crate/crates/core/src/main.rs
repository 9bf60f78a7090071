use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, doc) = dual_ginv::cli::run(std::env::args_os());
    println!("{}", doc.to_json());
    ExitCode::from(code as u8)
}
