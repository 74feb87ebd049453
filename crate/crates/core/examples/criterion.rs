//! Runs one acceptance criterion and prints its line with the wall time.
//!
//! `cargo run --release -p hankel-cone --example criterion -- 5`

use std::process::ExitCode;

use hankel_cone::verify::{run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let Some(id) = std::env::args().nth(1).and_then(|a| a.parse::<u8>().ok()).filter(|id| CRITERIA.iter().any(|c| c.0 == *id)) else {
        eprintln!("usage: criterion <1..={}>", CRITERIA.len());
        return ExitCode::from(2);
    };
    let c = run_criterion(id, VerifyOptions::default());
    println!("{c}  ({:.1}s)", c.seconds);
    if c.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
