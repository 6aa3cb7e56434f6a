// Flat extra dimensions and a finite polygonal cylinder.

use polycasimir::extensions::{
    cylinder_energy_asymptotic, cylinder_energy_exact, dimensional_reduction_check, rd_polygon_scale,
    resonator_tm_mode, CylinderConfig, ProductSpaceSpec,
};
use polycasimir::spectra::Mode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for dims in 0..4 {
        let spec = ProductSpaceSpec::new(dims, 4, -0.5)?;
        println!("R^{dims} × P_4: E_N / E_C = {:.6}", rd_polygon_scale(&spec)?);
    }

    for (s, area, d) in [(2.0, 1.0, 1), (2.5, 3.0, 1), (3.0, 1.0, 2)] {
        let (closed, quad) = dimensional_reduction_check(s, area, d)?;
        println!("∫d^{d}k (k²+{area})^−{s}: {closed:.12} vs {quad:.12}");
    }

    println!("\n  a      exact          asymptotic");
    for length in [0.5, 1.0, 2.0, 4.0] {
        let cfg = CylinderConfig::new(length, 4, 10, 8)?;
        let exact = cylinder_energy_exact(&cfg)?;
        match cylinder_energy_asymptotic(&cfg) {
            Ok(asym) => println!("  {length:<4}  {exact:+.6e}  {asym:+.6e}"),
            Err(e) => println!("  {length:<4}  {exact:+.6e}  ({e})"),
        }
    }

    let cfg = CylinderConfig::new(2.0, 4, 10, 8)?;
    for k in 1..=3 {
        println!("TM k={k}, (0,1): ω = {:.6}", resonator_tm_mode(k, Mode::new(0, 1), &cfg)?);
    }
    Ok(())
}
