//! Batch execution: one command per line, `#` comments, `assert` lines
//! compare rendered output. Stops at the first failure and reports its
//! line number.

use std::path::Path;

use crate::eval::Session;
use crate::parser::line_is_blank;

/// Runs a file of commands; returns the process exit code (0 on success,
/// 1 on a failed assertion, 2 on parse/eval/io errors).
pub fn run_batch(session: &mut Session, path: &Path, json: bool) -> i32 {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return 2;
        }
    };
    for (i, line) in content.lines().enumerate() {
        if line_is_blank(line) {
            continue;
        }
        match session.run_line(line) {
            Ok(out) => {
                if json {
                    println!("{}", session.envelope(line.trim(), &out));
                } else if !out.text.is_empty() {
                    println!("{}", out.text);
                }
            }
            Err(e) => {
                eprintln!("{}:{}: {e}", path.display(), i + 1);
                return e.exit_code();
            }
        }
    }
    0
}
