// CSV and JSON output, and reading it back.

use polycasimir::regularization::{circle_casimir_energy, EnergySource};
use polycasimir::report::{compare_grid, emit, parse, regime_table, ComparisonGrid, Format};
use polycasimir::spectra::polygon_factor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let factor = polygon_factor(4, 4)?;
    let grid = compare_grid(3, &factor)?;
    let csv = emit(&grid, Format::Csv);
    print!("{csv}");
    let back: ComparisonGrid = parse(&csv, Format::Csv)?;
    assert_eq!(back, grid);

    print!("{}", emit(&regime_table(&factor), Format::Json));
    print!("{}", emit(&circle_casimir_energy(1.0, EnergySource::PaperConstants)?, Format::Json));
    Ok(())
}
