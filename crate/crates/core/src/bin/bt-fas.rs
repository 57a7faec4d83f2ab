use std::io::IsTerminal;
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
    let code = bt_fas::cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr(), color);
    ExitCode::from(code as u8)
}
