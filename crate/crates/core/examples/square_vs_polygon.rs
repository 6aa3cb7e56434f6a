// How close is the N = 4 polygon to the actual square? Paired grid spectra,
// the leading-order regime table and the gap between regularized energies.

use polycasimir::regularization::{polygon_casimir_energy, square_casimir_energy, square_polygon_gap, EnergySource};
use polycasimir::report::{compare_grid, cumulative_curves, regime_table};
use polycasimir::spectra::polygon_factor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let factor = polygon_factor(4, 4)?;
    for g in [50, 100] {
        let grid = compare_grid(g, &factor)?;
        let s = grid.summary;
        println!(
            "G = {g:3}: mean rel diff {:.4}, max {:.4}, Σω ratio {:.4}, half-sum gap {:.4}",
            s.mean_rel_diff, s.max_rel_diff, s.cumulative_sum_ratio, s.energy_rel_diff
        );
        let curve = cumulative_curves(&grid);
        let last = curve.last().expect("non-empty grid");
        println!("        cumulative energy: polygon {:.1}, square {:.1}", last.energy_polygon, last.energy_square);
    }

    println!("\nregime  polygon/π  square/π  exact/π   quoted diff  exact diff");
    for r in regime_table(&factor) {
        println!(
            "{:6}  {:9.5}  {:8.5}  {:7.5}   {:11.4}  {:10.4}",
            r.regime.as_str(),
            r.polygon_coeff / std::f64::consts::PI,
            r.square_coeff / std::f64::consts::PI,
            r.square_coeff_exact / std::f64::consts::PI,
            r.paper_diff,
            r.formula_diff
        );
    }

    let e_s = square_casimir_energy(1.0)?;
    let e_n = polygon_casimir_energy(&factor, 1.0, EnergySource::PaperConstants)?;
    println!("\nE_S = {e_s:.7}, E_N = {:.7}; (E_S − E_N)/E_S = {:.4}", e_n.finite, square_polygon_gap(e_s, &e_n));
    Ok(())
}
