// Polygon frequencies from the disk spectrum and the factor M_N.

use polycasimir::spectra::{
    disk_frequencies, partial_casimir_sum, polygon_factor, polygon_frequencies, sqrt_factor_series, Truncation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for sides in [3, 4, 6, 12, 100] {
        let f = polygon_factor(sides, 4)?;
        let series = sqrt_factor_series(sides, 3)?;
        println!(
            "N = {sides:3}: M_N = {:.9}  √M_N = {:.9}  series = {:.9}",
            f.value,
            f.frequency_scale(),
            series.value
        );
    }
    // truncation order of the factor
    for order in 2..=4 {
        println!("N = 4, order {order}: M = {:.9}", polygon_factor(4, order)?.value);
    }

    let disk = disk_frequencies(1.0, Truncation::Global { count: 12 })?;
    let square_poly = polygon_frequencies(&polygon_factor(4, 4)?, &disk)?;
    println!("\n  (m, n)   disk        polygon N=4");
    for (d, p) in disk.entries.iter().zip(&square_poly.entries) {
        println!("  ({}, {})   {:.6}   {:.6}", d.mode.m, d.mode.n, d.omega, p.omega);
    }
    println!(
        "half-sum of the lowest 12: disk {:.6}, polygon {:.6}",
        partial_casimir_sum(&disk)?,
        partial_casimir_sum(&square_poly)?
    );
    Ok(())
}
