use std::process::ExitCode;

use qmf_core::acceptance::{criterion_count, run, DEFAULT_SEED};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=criterion_count() as u32 {
        let r = run(id, DEFAULT_SEED).expect("criterion exists");
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criterion_count());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
