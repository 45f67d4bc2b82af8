//! Teleportation fidelity for coherent and squeezed inputs.

use num_complex::Complex64;

use nongauss::moments::{OpKind, ResourceSpec};
use nongauss::teleport::{fidelity, fidelity_one_mode, parametric_curve, InputState, XAxis};

fn main() -> nongauss::Result<()> {
    let coherent = InputState::coherent(Complex64::new(0.0, 0.0));
    let squeezed = InputState::squeezed(0.6)?;

    println!("{:<8} {:>5} {:>10} {:>10}", "state", "r", "coherent", "eps=0.6");
    for r in [0.3, 1.0, 2.0] {
        for spec in [ResourceSpec::tmsv(r)?, ResourceSpec::subtract(1, 1, r)?, ResourceSpec::add(1, 1, r)?] {
            let fc = fidelity(&spec, &coherent)?;
            let fs = fidelity(&spec, &squeezed)?;
            println!("{:<8} {:>5.1} {:>10.6} {:>10.6}   ({:?})", spec.label(), r, fc.value, fs.value, fs.method);
        }
    }

    println!("\none-side photon addition, r = 0.8, eps = 0.5:");
    for k in 0..=3 {
        println!("  k = {k}: {:.8}", fidelity_one_mode(k, 0.8, 0.5)?.value);
    }

    println!("\nfidelity at fixed EPR correlation (coherent input):");
    for p in parametric_curve(OpKind::Subtract, 1, 1, &coherent, XAxis::Epr, &[0.4, 0.8, 1.2])? {
        println!("  epr {:.2} -> r {:.5}, F {:.6}", p.x, p.r, p.fidelity);
    }
    Ok(())
}
