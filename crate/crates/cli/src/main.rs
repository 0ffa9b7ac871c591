//! `orbifold-folds` binary: parses the command line, runs the command and
//! maps the outcome to an exit code (0 pass, 1 assertion failure, 2 usage
//! or schema error).

use clap::Parser;
use cli::commands::{run, Cli};
use cli::write_output;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(&cli).and_then(|outcome| write_output(cli.out.as_deref(), &outcome.text).map(|_| outcome.exit_code())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
