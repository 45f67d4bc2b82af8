//! Run the identity and cross-check suite and print each check.

use nongauss::cli::{run_verify, Command, RunConfig};

fn main() -> nongauss::Result<()> {
    let mut cfg = RunConfig::new(Command::Verify);
    cfg.quick = !std::env::args().any(|a| a == "--full");
    let report = run_verify(&cfg)?;
    for c in &report.checks {
        println!("{:<4} {:<62} {:>10.2e} / {:.0e}", if c.passed() { "ok" } else { "FAIL" }, c.name, c.deviation, c.tolerance);
    }
    println!("{}", if report.passed() { "all checks passed" } else { "some checks failed" });
    Ok(())
}
