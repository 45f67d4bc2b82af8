//! EPR correlation, quadrature variances and sum squeezing, plus the inverse
//! problem of finding the squeezing that reaches a target EPR value.

use std::f64::consts::FRAC_PI_2;

use nongauss::metrics::{metrics, solve_r_for_epr, solve_r_for_entropy, sum_squeezing, SumSqueezeQuery};
use nongauss::moments::{OpKind, ResourceSpec};

fn main() -> nongauss::Result<()> {
    println!("{:<8} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}", "state", "r", "epr", "var_x", "var_p", "S_opt", "E_bits");
    for spec in [
        ResourceSpec::tmsv(0.5)?,
        ResourceSpec::subtract(1, 1, 0.5)?,
        ResourceSpec::add(1, 1, 0.5)?,
        ResourceSpec::subtract(2, 1, 0.5)?,
        ResourceSpec::add(3, 0, 0.5)?,
    ] {
        let m = metrics(&spec)?;
        println!(
            "{:<8} {:>6.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            spec.label(),
            m.r,
            m.epr,
            m.var_x,
            m.var_p,
            m.sum_squeeze_opt,
            m.entropy_bits
        );
    }

    let q = SumSqueezeQuery::new(FRAC_PI_2)?;
    println!("\nS(pi/2) for ps(2,2) at r = 0.5: {:.6}", sum_squeezing(&ResourceSpec::subtract(2, 2, 0.5)?, q)?);

    println!("\nsqueezing needed for EPR = 1 and for 1 ebit:");
    for (kind, k, l) in [(OpKind::Subtract, 0, 0), (OpKind::Subtract, 1, 1), (OpKind::Subtract, 2, 0), (OpKind::Add, 1, 1)] {
        println!(
            "  {}({k},{l})  r_epr = {:.6}  r_ebit = {:.6}",
            kind.short(),
            solve_r_for_epr(kind, k, l, 1.0)?,
            solve_r_for_entropy(kind, k, l, 1.0)?
        );
    }
    Ok(())
}
