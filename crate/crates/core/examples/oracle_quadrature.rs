//! Independent brute-force checks: ladder operators on a truncated Fock state
//! and a direct characteristic-function integral for the fidelity.

use num_complex::Complex64;

use nongauss::metrics::metrics;
use nongauss::moments::{moment_antinormal, normalization, MomentQuery, ResourceSpec};
use nongauss::oracle::{
    oracle_fidelity, oracle_metrics, oracle_moment, prepare_state, Ordering, QuadratureConfig, ORACLE_TAIL_TOL,
};
use nongauss::teleport::{fidelity, InputState};

fn main() -> nongauss::Result<()> {
    let spec = ResourceSpec::add(2, 1, 0.8)?;
    let state = prepare_state(&spec, ORACLE_TAIL_TOL)?;
    println!("{}: oracle state with {} entries, tail {:.1e}", spec.label(), state.len(), state.tail_mass());

    // On the added state the antinormal moment equals C_{k+p, l+h} / C_{k,l}.
    let q = MomentQuery::new(1, 1, 1, 1)?;
    let o = oracle_moment(&state, q, Ordering::Antinormal)?;
    let closed = moment_antinormal(MomentQuery::diagonal(3, 2), 0.8) / normalization(&spec)?;
    println!("<a a† b b†>: oracle {:.12} (± {:.1e}), closed form {closed:.12}", o.value, o.error_bound);

    let a = metrics(&spec)?;
    let b = oracle_metrics(&spec)?;
    println!("epr: closed {:.12}, oracle {:.12}", a.epr, b.epr);
    println!("S_opt: closed {:.12}, oracle {:.12}", a.sum_squeeze_opt, b.sum_squeeze_opt);
    println!("entropy: closed {:.12}, oracle {:.12}", a.entropy_bits, b.entropy_bits);

    let cfg = QuadratureConfig::default();
    for input in [InputState::coherent(Complex64::new(0.0, 0.0)), InputState::squeezed(0.3)?] {
        let quad = oracle_fidelity(&spec, &input, &cfg)?;
        let fast = fidelity(&spec, &input)?;
        println!(
            "F(eps={}): analytic {:.10}, quadrature {:.10} (refinement {:.1e}, radius {:.2})",
            input.epsilon(),
            fast.value,
            quad.value,
            quad.refinement_diff,
            quad.radius
        );
    }
    Ok(())
}
