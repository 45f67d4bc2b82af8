//! Coefficient extraction from `exp(quadratic form)` generating functions.
//!
//! The same moments as the closed-form resummation, obtained by truncated
//! polynomial arithmetic and, for small orders, by Wick pairing.

use nongauss::gfn::{extract_coefficient, wick_extract, ExponentForm, Var};
use nongauss::moments::{moment_antinormal, moment_normal, MomentQuery};

fn main() -> nongauss::Result<()> {
    let r = 0.6;
    let anti = ExponentForm::antinormal_moments(r);
    let norm = ExponentForm::normal_moments(r);
    println!("r = {r}; antinormal form fs coefficient = {:.6}", anti.quad(Var::F, Var::S));

    println!("\n{:>12} {:>16} {:>16} {:>16}", "(p,q,h,j)", "resummed", "polynomial", "wick");
    for (p, q, h, j) in [(1, 1, 0, 0), (2, 2, 1, 1), (3, 2, 1, 0), (4, 4, 4, 4)] {
        let mq = MomentQuery::new(p, q, h, j)?;
        // Orders follow the variable order (f, s, t, τ) ↔ (a, a†, b, b†).
        let orders = [p, q, h, j];
        let poly = extract_coefficient(&anti, orders)?;
        let wick = wick_extract(&anti, orders)?;
        println!("{:>12} {:>16.10e} {:>16.10e} {:>16.10e}", format!("({p},{q},{h},{j})"), moment_antinormal(mq, r), poly, wick);
    }

    let mq = MomentQuery::new(3, 3, 2, 2)?;
    println!(
        "\nnormal ordering, (3,3,2,2): resummed {:.10e}, polynomial {:.10e}",
        moment_normal(mq, r),
        extract_coefficient(&norm, [3, 3, 2, 2])?
    );

    // Extraction is derivative-normalized: exp(x f s) gives (n!)² x^n / n! = n! x^n at orders (n, n).
    let custom = ExponentForm::zero().with_quad(Var::F, Var::S, 0.5);
    println!("custom form, orders (3,3,0,0): {:.10} (expected {:.10})", extract_coefficient(&custom, [3, 3, 0, 0])?, 6.0 * 0.125);
    Ok(())
}
