//! Truncated Fock states, their Schmidt spectra and entanglement entropy.
//!
//! `cargo run --example states_entropy -- state.csv` also dumps the amplitudes.

use std::fs::File;
use std::io::BufWriter;

use nongauss::moments::ResourceSpec;
use nongauss::states::{build_state, entropy, schmidt, tmsv_entropy, DEFAULT_TAIL_TOL};

fn main() -> nongauss::Result<()> {
    let spec = ResourceSpec::subtract(2, 1, 0.7)?;
    let state = build_state(&spec, DEFAULT_TAIL_TOL)?;
    println!(
        "{}: {} band entries starting at {:?}, offset {}, discarded mass {:.2e}",
        spec.label(),
        state.len(),
        state.start(),
        state.band_offset(),
        state.tail_mass()
    );
    for (m, n, c) in state.entries().take(5) {
        println!("  |{m},{n}>  {c:+.8}");
    }

    let spectrum = schmidt(&state);
    println!("largest Schmidt weights: {:?}", &spectrum.weights[..4.min(spectrum.weights.len())]);
    println!("entropy from the spectrum: {:.10} bits", spectrum.entropy_bits());
    println!("entropy from the series:   {:.10} bits", entropy(&spec)?);

    println!("\n  r    tmsv     ps(1,1)  pa(1,1)  ps(3,3)");
    for r in [0.2, 0.5, 1.0, 1.5] {
        println!(
            "  {r:.1}  {:.5}  {:.5}  {:.5}  {:.5}",
            tmsv_entropy(r),
            entropy(&ResourceSpec::subtract(1, 1, r)?)?,
            entropy(&ResourceSpec::add(1, 1, r)?)?,
            entropy(&ResourceSpec::subtract(3, 3, r)?)?
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        state.write_csv(BufWriter::new(File::create(&path)?), &spec.label())?;
        println!("amplitudes written to {path}");
    }
    Ok(())
}
