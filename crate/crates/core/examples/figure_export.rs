//! Export one figure dataset as CSV.
//!
//! `cargo run --release --example figure_export -- 3a > fig3a.csv`

use std::io::stdout;

use nongauss::cli::{run_figure, Command, RunConfig};

fn main() -> nongauss::Result<()> {
    let mut cfg = RunConfig::new(Command::Figure);
    cfg.figure = Some(std::env::args().nth(1).unwrap_or_else(|| "2".into()));
    let table = run_figure(&cfg)?;
    eprintln!("{} rows", table.rows.len());
    table.write_csv(stdout().lock(), &cfg.config_line())
}
