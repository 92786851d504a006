use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = korbit_cli::run(std::env::args_os(), &mut out, &mut stderr.lock());
    let flushed = out.flush();
    if flushed.is_err() && code == korbit_cli::EXIT_OK {
        return ExitCode::from(korbit_cli::EXIT_INTERNAL as u8);
    }
    ExitCode::from(code as u8)
}
