//! Polygon-vs-square comparisons and their serialization.
//!
//! The grid pairing matches disk mode (m, n), m ∈ [0, G−1], with square mode
//! (m+1, n), so both sides of a pair sit at the same position of their
//! G×G index grid.

mod emit;

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::CompensatedSum;
use crate::spectra::{
    ascending_sum, disk_frequencies, polygon_frequencies, square_frequencies, Domain, Mode, PolygonFactor, Spectrum,
    Truncation,
};

pub use emit::{emit, format_real, parse, CylinderRecord, Dataset, Format, InflateRecord, RdScaleRecord, ZeroList};

/// One polygon frequency and its square partner. `m`, `n` index the disk
/// mode; the square mode is (m+1, n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonPair {
    pub m: u32,
    pub n: u32,
    pub omega_polygon: f64,
    pub omega_square: f64,
    /// |ω_polygon − ω_square| / ω_square.
    pub rel_diff: f64,
}

impl ComparisonPair {
    pub fn mode(&self) -> Mode {
        Mode::new(self.m, self.n)
    }

    pub fn square_mode(&self) -> Mode {
        Mode::new(self.m + 1, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    /// Mean of the per-pair relative differences.
    pub mean_rel_diff: f64,
    pub max_rel_diff: f64,
    /// Σ ω_polygon / Σ ω_square over the grid.
    pub cumulative_sum_ratio: f64,
    /// (Σ ω_polygon − Σ ω_square) / Σ ω_polygon, the relative gap between
    /// the two truncated half-sums.
    pub energy_rel_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonGrid {
    pub grid: u32,
    pub sides: u32,
    pub summary: ComparisonSummary,
    pub pairs: Vec<ComparisonPair>,
}

/// Pairs the G×G polygon grid (unit radius) with the G×G square grid (unit
/// side).
pub fn compare_grid(grid: u32, factor: &PolygonFactor) -> Result<ComparisonGrid> {
    if grid < 2 {
        return Err(Error::invalid("grid", format!("grid side must be at least 2, got {grid}")));
    }
    let disk = disk_frequencies(1.0, Truncation::Grid { side: grid })?;
    let polygon = polygon_frequencies(factor, &disk)?;
    let square = square_frequencies(1.0, grid)?;
    compare_spectra(&polygon, &square)
}

fn grid_side(s: &Spectrum) -> Option<u32> {
    match s.truncation {
        Truncation::Grid { side } if s.len() == side as usize * side as usize => Some(side),
        _ => None,
    }
}

/// Pairs two grid spectra of equal side, in any entry order.
pub fn compare_spectra(polygon: &Spectrum, square: &Spectrum) -> Result<ComparisonGrid> {
    let Domain::Polygon { sides } = polygon.domain else {
        return Err(Error::invalid("polygon", "expected a polygon spectrum"));
    };
    if square.domain != Domain::Square {
        return Err(Error::invalid("square", "expected a square spectrum"));
    }
    let g = match (grid_side(polygon), grid_side(square)) {
        (Some(a), Some(b)) if a == b && a >= 2 => a,
        _ => return Err(Error::invalid("grid", "both spectra must be complete grids of the same side ≥ 2")),
    };
    let gs = g as usize;
    let mut wp = vec![f64::NAN; gs * gs];
    let mut ws = vec![f64::NAN; gs * gs];
    for e in &polygon.entries {
        wp[e.mode.m as usize * gs + e.mode.n as usize - 1] = e.omega;
    }
    for e in &square.entries {
        ws[(e.mode.m as usize - 1) * gs + e.mode.n as usize - 1] = e.omega;
    }
    let pairs: Vec<ComparisonPair> = (0..gs * gs)
        .map(|i| ComparisonPair {
            m: (i / gs) as u32,
            n: (i % gs) as u32 + 1,
            omega_polygon: wp[i],
            omega_square: ws[i],
            rel_diff: (wp[i] - ws[i]).abs() / ws[i],
        })
        .collect();
    if pairs.iter().any(|p| !p.rel_diff.is_finite()) {
        return Err(Error::invalid("grid", "spectra do not cover the same index grid"));
    }
    let mean_rel_diff = pairs.iter().map(|p| p.rel_diff).collect::<CompensatedSum>().value() / pairs.len() as f64;
    let max_rel_diff = pairs.iter().map(|p| p.rel_diff).fold(0.0, f64::max);
    let sum_p = ascending_sum(wp.into_iter());
    let sum_s = ascending_sum(ws.into_iter());
    Ok(ComparisonGrid {
        grid: g,
        sides,
        summary: ComparisonSummary {
            mean_rel_diff,
            max_rel_diff,
            cumulative_sum_ratio: sum_p / sum_s,
            energy_rel_diff: (sum_p - sum_s) / sum_p,
        },
        pairs,
    })
}

/// The k-th smallest frequency of each spectrum and the half-sums of the k
/// smallest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub index: u64,
    pub omega_polygon: f64,
    pub omega_square: f64,
    pub energy_polygon: f64,
    pub energy_square: f64,
}

/// Eigenvalue-vs-index and cumulative-energy curves for both spectra.
pub fn cumulative_curves(grid: &ComparisonGrid) -> Vec<CurvePoint> {
    let mut p: Vec<f64> = grid.pairs.iter().map(|x| x.omega_polygon).collect();
    let mut s: Vec<f64> = grid.pairs.iter().map(|x| x.omega_square).collect();
    p.sort_by(f64::total_cmp);
    s.sort_by(f64::total_cmp);
    let (mut ep, mut es) = (CompensatedSum::new(), CompensatedSum::new());
    p.into_iter()
        .zip(s)
        .enumerate()
        .map(|(i, (wp, ws))| {
            ep.add(0.5 * wp);
            es.add(0.5 * ws);
            CurvePoint {
                index: i as u64 + 1,
                omega_polygon: wp,
                omega_square: ws,
                energy_polygon: ep.value(),
                energy_square: es.value(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "n>>m")]
    RadialDominant,
    #[serde(rename = "m~n")]
    Comparable,
    #[serde(rename = "m>>n")]
    AngularDominant,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::RadialDominant => "n>>m",
            Regime::Comparable => "m~n",
            Regime::AngularDominant => "m>>n",
        }
    }
}

/// Leading-order comparison of polygon and square frequencies in one index
/// regime. Coefficients multiply the dominant index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub regime: Regime,
    /// √M_N times the McMahon coefficient: π, 3π/2 or π/2.
    pub polygon_coeff: f64,
    /// Square coefficient as quoted in the published comparison: π, 2π, π.
    pub square_coeff: f64,
    /// Square coefficient from (π/a)√(m² + n²): π, √2 π, π.
    pub square_coeff_exact: f64,
    /// |polygon − quoted square| / polygon.
    pub paper_diff: f64,
    /// |polygon − exact square| / polygon.
    pub formula_diff: f64,
}

pub fn regime_table(factor: &PolygonFactor) -> Vec<RegimeReport> {
    let r = factor.frequency_scale();
    [
        (Regime::RadialDominant, PI, PI, PI),
        (Regime::Comparable, 1.5 * PI, 2.0 * PI, SQRT_2 * PI),
        (Regime::AngularDominant, 0.5 * PI, PI, PI),
    ]
    .into_iter()
    .map(|(regime, mcmahon, quoted, exact)| {
        let polygon_coeff = r * mcmahon;
        RegimeReport {
            regime,
            polygon_coeff,
            square_coeff: quoted,
            square_coeff_exact: exact,
            paper_diff: (polygon_coeff - quoted).abs() / polygon_coeff,
            formula_diff: (polygon_coeff - exact).abs() / polygon_coeff,
        }
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::polygon_factor;

    fn factor() -> PolygonFactor {
        polygon_factor(4, 4).unwrap()
    }

    #[test]
    fn small_grid_pairs_and_summary() {
        let g = compare_grid(3, &factor()).unwrap();
        assert_eq!(g.pairs.len(), 9);
        let first = g.pairs[0];
        assert_eq!((first.mode(), first.square_mode()), (Mode::new(0, 1), Mode::new(1, 1)));
        assert!((first.omega_polygon - 3.046_394_040_189_559).abs() < 1e-13);
        assert!((first.omega_square - PI * SQRT_2).abs() < 1e-15);
        for p in &g.pairs {
            assert!((p.rel_diff - (p.omega_polygon - p.omega_square).abs() / p.omega_square).abs() < 1e-16);
        }
        let max = g.pairs.iter().map(|p| p.rel_diff).fold(0.0, f64::max);
        assert_eq!(g.summary.max_rel_diff, max);
        assert!(compare_grid(1, &factor()).is_err());
    }

    // independent check of the summary against scipy's jn_zeros at G = 50
    #[test]
    fn grid_50_matches_reference_metrics() {
        let g = compare_grid(50, &factor()).unwrap();
        assert!((g.summary.mean_rel_diff - 0.270_09).abs() < 1e-5, "{}", g.summary.mean_rel_diff);
    }

    #[test]
    fn mean_is_scale_invariant() {
        let disk = disk_frequencies(2.5, Truncation::Grid { side: 20 }).unwrap();
        let poly = polygon_frequencies(&factor(), &disk).unwrap();
        let sq = square_frequencies(2.5, 20).unwrap();
        let scaled = compare_spectra(&poly, &sq).unwrap();
        let unit = compare_grid(20, &factor()).unwrap();
        assert!((scaled.summary.mean_rel_diff - unit.summary.mean_rel_diff).abs() < 1e-14);
        // entry order does not matter
        let shuffled = compare_spectra(&poly.clone().into_sorted(), &sq.into_sorted()).unwrap();
        assert_eq!(shuffled, scaled);
    }

    #[test]
    fn cumulative_ratio_is_cauchy() {
        let r: Vec<f64> = [50, 100, 200]
            .into_iter()
            .map(|g| compare_grid(g, &factor()).unwrap().summary.cumulative_sum_ratio)
            .collect();
        assert!((r[2] - r[1]).abs() < (r[1] - r[0]).abs());
    }

    #[test]
    fn curves_are_monotone() {
        let g = compare_grid(10, &factor()).unwrap();
        let c = cumulative_curves(&g);
        assert_eq!(c.len(), 100);
        assert!(c
            .windows(2)
            .all(|w| w[1].omega_polygon >= w[0].omega_polygon && w[1].energy_square > w[0].energy_square));
        let total: f64 = g.pairs.iter().map(|p| p.omega_polygon).sum::<f64>() / 2.0;
        assert!((c[99].energy_polygon - total).abs() < 1e-12 * total);
    }

    #[test]
    fn regime_table_for_square() {
        let t = regime_table(&factor());
        assert_eq!(t.len(), 3);
        assert!((t[0].polygon_coeff / PI - 1.266_78).abs() < 1e-5);
        assert!((t[1].polygon_coeff / PI - 1.900_17).abs() < 1e-5);
        assert!((t[0].paper_diff - 0.2106).abs() < 1e-4);
        assert!((t[1].paper_diff - 0.0525).abs() < 1e-4);
        assert!((t[2].paper_diff - 0.5788).abs() < 1e-4);
        assert!((t[1].formula_diff - 0.2557).abs() < 1e-4);
        assert_eq!(t[2].formula_diff, t[2].paper_diff);
        assert!(t.iter().all(|r| r.polygon_coeff > 0.0 && r.square_coeff > 0.0));
    }
}
