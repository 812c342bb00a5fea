use std::io::Write;
use std::process::ExitCode;

use modkernel_cli::{config::CONFIG_ENV, run};

fn main() -> ExitCode {
    let env_config = std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(Into::into);
    let out = run(std::env::args_os(), env_config);
    // A closed stdout (e.g. piping into `head`) is not worth a panic.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
