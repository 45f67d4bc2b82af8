//! The fixed-EPR comparison table, with deviations from the printed values.

use nongauss::cli::table1_rows;

fn main() -> nongauss::Result<()> {
    println!("{:>5} {:>9} {:>9} {:>9}   {:>9} {:>9} {:>9}  ok", "(k,l)", "r", "F", "E", "dr", "dF", "dE");
    for row in table1_rows()? {
        let (ok_r, ok_f, ok_e) = row.within_tolerance();
        println!(
            "{:>5} {:>9.5} {:>9.5} {:>9.5}   {:>+9.1e} {:>+9.1e} {:>+9.1e}  {}{}{}",
            format!("({},{})", row.k, row.l),
            row.r,
            row.fidelity,
            row.entropy,
            row.r - row.ref_r,
            row.fidelity - row.ref_fidelity,
            row.entropy - row.ref_entropy,
            mark(ok_r),
            mark(ok_f),
            mark(ok_e)
        );
    }
    Ok(())
}

fn mark(ok: bool) -> char {
    if ok {
        '.'
    } else {
        'x'
    }
}
