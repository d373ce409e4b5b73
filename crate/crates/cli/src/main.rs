use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tuniv_cli::{batch, eval::Session, parser};
use tuniv_core::system::SystemConfig;

/// Expression-language front end for the finite/non-well-founded set
/// calculus: a REPL, a batch runner and a DOT exporter.
#[derive(Parser, Debug)]
#[command(name = "tuniv", version, about)]
struct Args {
    /// Run a file of commands (one per line, '#' comments) and exit.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    /// Evaluate one expression and emit its membership graph as DOT.
    #[arg(long, value_name = "EXPR")]
    dot: Option<String>,

    /// Where to write the DOT output (stdout when omitted).
    #[arg(short, long, value_name = "FILE", requires = "dot")]
    output: Option<PathBuf>,

    /// Print one JSON envelope per command instead of plain text.
    #[arg(long)]
    json: bool,

    /// Largest constructible von Neumann numeral.
    #[arg(long, default_value_t = 12, value_name = "N")]
    max_numeral: u32,

    /// Cycle-length bound for the quasi functor.
    #[arg(long, default_value_t = 3, value_name = "L")]
    quasi_max_len: u32,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = SystemConfig {
        max_numeral: args.max_numeral,
        quasi_max_len: args.quasi_max_len,
        ..SystemConfig::default()
    };
    let mut session = Session::new(config);

    if let Some(expr_text) = &args.dot {
        return run_dot(&mut session, expr_text, args.output.as_deref());
    }
    if let Some(path) = &args.batch {
        return code(batch::run_batch(&mut session, path, args.json));
    }
    repl(&mut session, args.json)
}

fn run_dot(
    session: &mut Session,
    expr_text: &str,
    output: Option<&std::path::Path>,
) -> ExitCode {
    let line = format!("dot {expr_text}");
    match session.run_line(&line) {
        Ok(out) => match output {
            Some(path) => match std::fs::write(path, &out.text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    code(2)
                }
            },
            None => {
                print!("{}", out.text);
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            eprintln!("{e}");
            code(e.exit_code())
        }
    }
}

fn repl(session: &mut Session, json: bool) -> ExitCode {
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    if interactive {
        println!("set calculus repl; 'help' lists commands, ctrl-d exits");
    }
    let mut worst = 0;
    loop {
        if interactive {
            print!("tuniv> ");
            let _ = std::io::stdout().flush();
        }
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("{e}");
                return code(2);
            }
        }
        if parser::line_is_blank(&line) {
            continue;
        }
        match session.run_line(&line) {
            Ok(out) => {
                if json {
                    println!("{}", session.envelope(line.trim(), &out));
                } else if !out.text.is_empty() {
                    println!("{}", out.text);
                }
            }
            Err(e) => {
                eprintln!("{e}");
                worst = worst.max(e.exit_code());
            }
        }
    }
    // interactive sessions stay at 0; piped input reports the last error
    code(if interactive { 0 } else { worst })
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}
