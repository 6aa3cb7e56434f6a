// Energy of the unit square from the Epstein–Hurwitz expansion, and the
// s → −1/2 limit approached from both sides.

use polycasimir::regularization::{epstein_hurwitz_zeta, square_energy_parts, square_zeta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = square_energy_parts(1.0)?;
    println!("π/24          {:+.12}", p.first);
    println!("−ζ(3)/8π      {:+.12}", p.second);
    println!("Bessel sum    {:+.12}", p.bessel);
    println!("E_S           {:+.12}", p.energy);
    println!("without sum   {:+.12}", p.energy_closed_form);

    for eps in [1e-3, 1e-4] {
        let lo = square_zeta(-0.5 - eps, 1.0)? / 2.0;
        let hi = square_zeta(-0.5 + eps, 1.0)? / 2.0;
        println!("ε = {eps:.0e}: ζ/2 at −1/2 ∓ ε = {lo:.9}, {hi:.9}");
    }

    // ζ_EH against the direct sum where the latter converges
    let (s, q) = (2.0, 0.5);
    let direct: f64 = (1..200_000).map(|n| (f64::from(n).powi(2) + q).powf(-s)).sum();
    println!("\nΣ (n² + {q})^−{s}: expansion {:.12}, direct {:.12}", epstein_hurwitz_zeta(s, q)?, direct);
    Ok(())
}
