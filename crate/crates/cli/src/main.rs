use std::io::{self, Write};
use std::process::ExitCode;

use grover_phase_cli::{parse_args, run, ArgsError};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os().skip(1)) {
        Ok(config) => run(&config, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            match &e {
                ArgsError::Display(text) => print!("{text}"),
                ArgsError::Usage(text) => eprintln!("{}", text.trim_end()),
            }
            e.exit_code()
        }
    };
    let _ = io::stdout().flush();
    ExitCode::from(code as u8)
}
