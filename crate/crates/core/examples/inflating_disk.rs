// A disk of radius 1 + ΔR: perturbative factors against exact dilation,
// under which eigenvalues scale as (1 + ΔR)^−2.

use polycasimir::spectra::{inflate_disk, inflate_eigen_factor, inflate_energy_factor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("   ΔR     eigen factor  exact        energy factor  simplified   exact");
    for dr in [-0.1, -0.05, -0.01, 0.01, 0.05, 0.1] {
        let exact = (1.0f64 + dr).powi(-2);
        println!(
            "{dr:+.2}   {:.9}   {exact:.9}  {:.9}    {:.9}  {:.9}",
            inflate_eigen_factor(dr)?,
            inflate_energy_factor(dr, false)?,
            inflate_energy_factor(dr, true)?,
            1.0 / (1.0 + dr)
        );
    }
    let lambda = 2.404_825_557_695_773f64.powi(2);
    println!("\nλ_01 = {lambda:.6} → {:.6} at ΔR = 0.05", inflate_disk(lambda, 0.05)?);
    Ok(())
}
