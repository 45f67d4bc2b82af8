//! Closed-form two-mode moments and normalizations.
//!
//! `cargo run --example moments -- 0.8`

use nongauss::moments::{
    moment_antinormal, moment_normal, normalization, resource_expectations, MomentQuery, ResourceSpec,
};

fn main() -> nongauss::Result<()> {
    let r: f64 = std::env::args().nth(1).map_or(Ok(0.8), |s| s.parse()).unwrap_or(0.8);
    println!("r = {r}");

    println!("\nbalanced moments <a^p a†^q b^h b†^j> and <a†^q a^p b†^j b^h>:");
    for (p, q, h, j) in [(1, 1, 0, 0), (1, 1, 1, 1), (2, 2, 1, 1), (3, 2, 1, 0), (2, 3, 4, 5)] {
        let mq = MomentQuery::new(p, q, h, j)?;
        println!(
            "  ({p},{q},{h},{j})  antinormal {:>14.8e}  normal {:>14.8e}",
            moment_antinormal(mq, r),
            moment_normal(mq, r)
        );
    }
    // An unbalanced query carries no weight on these band states.
    let off = MomentQuery::new(2, 1, 0, 0)?;
    println!("  (2,1,0,0)  antinormal {}", moment_antinormal(off, r));

    println!("\nnormalizations:");
    for (k, l) in [(0, 0), (1, 0), (2, 1), (3, 3)] {
        let ps = normalization(&ResourceSpec::subtract(k, l, r)?)?;
        let pa = normalization(&ResourceSpec::add(k, l, r)?)?;
        println!("  (k,l)=({k},{l})  subtraction {ps:>12.6e}  addition {pa:>12.6e}");
    }

    let e = resource_expectations(&ResourceSpec::add(2, 1, r)?)?;
    println!("\nexpectations for the (2,1) photon-added state:\n{e:#?}");
    Ok(())
}
