// Zeros of J_m: single lookups, an interlacing table, and the distance to
// McMahon's leading estimate.

use polycasimir::specfun::{bessel_j, bessel_j_zero, mcmahon_estimate, BesselZeroTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(0, 1), (1, 1), (10, 10), (50, 100), (999, 1)] {
        let x = bessel_j_zero(m, n)?;
        println!("x_({m},{n}) = {x:.15}  J_m(x) = {:+.1e}", bessel_j(m, x)?);
    }

    let table = BesselZeroTable::new(6, 5)?;
    println!("\nfirst five zeros of J_0 … J_5");
    for m in 0..6 {
        let row: Vec<String> = table.row(m).iter().map(|x| format!("{x:9.5}")).collect();
        println!("m = {m}: {}", row.join(" "));
    }

    println!("\nx_(2,n) − McMahon leading term");
    for n in [1, 10, 100, 1000] {
        let x = bessel_j_zero(2, n)?;
        println!("n = {n:4}: {:+.3e}", x - mcmahon_estimate(2, n));
    }
    Ok(())
}
