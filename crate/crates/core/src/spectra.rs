//! Dirichlet frequencies of the disk, the square and the regular N-gon.
//!
//! Frequencies ω are stored in units of 1/a; the Laplacian eigenvalue is ω².
//! The polygon factor M_N multiplies ω², so polygon spectra are the disk
//! spectrum scaled by √M_N.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::specfun::{bessel_j_zero, riemann_zeta, BesselZeroTable, CompensatedSum};

/// Angular order / radial index of a disk mode, or the two indices of a
/// square mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode {
    pub m: u32,
    pub n: u32,
}

impl Mode {
    pub const fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Disk,
    Square,
    Polygon { sides: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Disk: m ∈ [0, G−1], n ∈ [1, G]. Square: m, n ∈ [1, G].
    Grid { side: u32 },
    /// The K smallest frequencies.
    Global { count: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub mode: Mode,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub domain: Domain,
    pub scale: f64,
    pub truncation: Truncation,
    /// Whether `entries` are in ascending (ω, m, n) order.
    pub sorted: bool,
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.omega)
    }

    /// The same spectrum with entries in ascending (ω, m, n) order.
    pub fn into_sorted(mut self) -> Self {
        if !self.sorted {
            self.entries.sort_by(cmp_entry);
            self.sorted = true;
        }
        self
    }
}

fn cmp_entry(a: &SpectrumEntry, b: &SpectrumEntry) -> Ordering {
    a.omega.total_cmp(&b.omega).then(a.mode.cmp(&b.mode))
}

/// M_N = 1 + 4ζ(2)/N² + 4ζ(3)/N³ + 28ζ(4)/N⁴, truncated after the 1/N^order term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonFactor {
    pub sides: u32,
    pub order: u32,
    pub value: f64,
}

impl PolygonFactor {
    /// √M_N, the factor applied to frequencies.
    pub fn frequency_scale(&self) -> f64 {
        self.value.sqrt()
    }
}

pub fn polygon_factor(sides: u32, order: u32) -> Result<PolygonFactor> {
    if sides < 3 {
        return Err(Error::invalid("sides", format!("a polygon needs at least 3 sides, got {sides}")));
    }
    if !(2..=4).contains(&order) {
        return Err(Error::invalid("order", format!("series order must be 2, 3 or 4, got {order}")));
    }
    let h = 1.0 / sides as f64;
    let coeffs = [4.0 * riemann_zeta(2.0)?, 4.0 * riemann_zeta(3.0)?, 28.0 * riemann_zeta(4.0)?];
    // smallest term first
    let mut value = 0.0;
    for k in (2..=order).rev() {
        value += coeffs[(k - 2) as usize] * h.powi(k as i32);
    }
    Ok(PolygonFactor { sides, order, value: 1.0 + value })
}

/// Taylor coefficients of √M_N in h = 1/N, with its value at the given N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtFactorSeries {
    /// c_0, c_1, …: √M_N ≈ Σ c_k h^k.
    pub coefficients: Vec<f64>,
    pub value: f64,
}

/// Expansion of √M_N through `terms` nonzero corrections (1 ≤ terms ≤ 3):
/// [1, 0, 2ζ(2), 2ζ(3), 14ζ(4) − 2ζ(2)²]. There is no 1/N term.
pub fn sqrt_factor_series(sides: u32, terms: u32) -> Result<SqrtFactorSeries> {
    if sides < 3 {
        return Err(Error::invalid("sides", format!("a polygon needs at least 3 sides, got {sides}")));
    }
    if !(1..=3).contains(&terms) {
        return Err(Error::invalid("terms", format!("between 1 and 3 correction terms, got {terms}")));
    }
    let z2 = riemann_zeta(2.0)?;
    let all = [1.0, 0.0, 2.0 * z2, 2.0 * riemann_zeta(3.0)?, 14.0 * riemann_zeta(4.0)? - 2.0 * z2 * z2];
    let coefficients = all[..terms as usize + 2].to_vec();
    let h = 1.0 / sides as f64;
    let value = coefficients.iter().rev().fold(0.0, |acc, c| acc * h + c);
    Ok(SqrtFactorSeries { coefficients, value })
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Frontier {
    omega: OrdF64,
    mode: Mode,
}

#[derive(PartialEq)]
struct OrdF64(f64);
impl Eq for OrdF64 {}
impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Disk frequencies x_{m,n}/a.
///
/// Global truncation walks a frontier over angular orders: x_{m,n} increases
/// in both m and n, so the next smallest zero is always (m, n+1) or (m+1, 1)
/// of an already emitted mode.
pub fn disk_frequencies(a: f64, truncation: Truncation) -> Result<Spectrum> {
    require_positive("radius", a)?;
    let entries = match truncation {
        Truncation::Grid { side } => {
            if side == 0 {
                return Err(Error::invalid("grid", "grid side must be at least 1"));
            }
            let table = BesselZeroTable::new(side, side)?;
            let mut entries = Vec::with_capacity(side as usize * side as usize);
            for m in 0..side {
                for (i, &x) in table.row(m).iter().enumerate() {
                    entries.push(SpectrumEntry { mode: Mode::new(m, i as u32 + 1), omega: x / a });
                }
            }
            return Ok(Spectrum { domain: Domain::Disk, scale: a, truncation, sorted: false, entries });
        }
        Truncation::Global { count } => {
            if count == 0 {
                return Err(Error::invalid("count", "count must be at least 1"));
            }
            let mut heap = BinaryHeap::new();
            heap.push(Reverse(Frontier { omega: OrdF64(bessel_j_zero(0, 1)?), mode: Mode::new(0, 1) }));
            let mut entries = Vec::with_capacity(count as usize);
            while entries.len() < count as usize {
                let Reverse(Frontier { omega, mode }) = heap.pop().expect("frontier is never empty");
                entries.push(SpectrumEntry { mode, omega: omega.0 / a });
                // the two successors are independent zero searches
                let (next_n, next_m) = rayon::join(
                    || bessel_j_zero(mode.m, mode.n + 1),
                    || if mode.n == 1 { Some(bessel_j_zero(mode.m + 1, 1)) } else { None },
                );
                heap.push(Reverse(Frontier { omega: OrdF64(next_n?), mode: Mode::new(mode.m, mode.n + 1) }));
                if let Some(x) = next_m {
                    heap.push(Reverse(Frontier { omega: OrdF64(x?), mode: Mode::new(mode.m + 1, 1) }));
                }
            }
            entries
        }
    };
    Ok(Spectrum { domain: Domain::Disk, scale: a, truncation, sorted: true, entries })
}

/// Square frequencies (π/a)√(m² + n²), m, n ∈ [1, G], row-major in m.
pub fn square_frequencies(a: f64, side: u32) -> Result<Spectrum> {
    require_positive("length", a)?;
    if side == 0 {
        return Err(Error::invalid("grid", "grid side must be at least 1"));
    }
    let entries: Vec<SpectrumEntry> = (1..=side)
        .into_par_iter()
        .flat_map_iter(|m| {
            (1..=side)
                .map(move |n| SpectrumEntry { mode: Mode::new(m, n), omega: PI / a * ((m as f64).hypot(n as f64)) })
        })
        .collect();
    Ok(Spectrum { domain: Domain::Square, scale: a, truncation: Truncation::Grid { side }, sorted: false, entries })
}

/// Polygon spectrum: every disk frequency multiplied by √M_N.
pub fn polygon_frequencies(factor: &PolygonFactor, base: &Spectrum) -> Result<Spectrum> {
    if base.domain != Domain::Disk {
        return Err(Error::invalid("base", "polygon frequencies are built from a disk spectrum"));
    }
    let scale = factor.frequency_scale();
    let entries = base.entries.iter().map(|e| SpectrumEntry { mode: e.mode, omega: e.omega * scale }).collect();
    Ok(Spectrum {
        domain: Domain::Polygon { sides: factor.sides },
        scale: base.scale,
        truncation: base.truncation,
        sorted: base.sorted,
        entries,
    })
}

/// Half the sum of all frequencies, added in ascending order with
/// compensation. A truncation of a divergent sum, only meaningful when
/// compared at equal truncation.
pub fn partial_casimir_sum(spectrum: &Spectrum) -> Result<f64> {
    if spectrum.is_empty() {
        return Err(Error::invalid("spectrum", "cannot sum an empty spectrum"));
    }
    Ok(0.5 * ascending_sum(spectrum.frequencies()))
}

pub(crate) fn ascending_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().collect::<CompensatedSum>().value()
}

const INFLATE_LIMIT: f64 = 0.2;

fn check_delta_r(delta_r: f64) -> Result<f64> {
    if !delta_r.is_finite() || delta_r.abs() >= INFLATE_LIMIT {
        return Err(Error::invalid("delta-r", format!("|ΔR| must be below {INFLATE_LIMIT}, got {delta_r}")));
    }
    Ok(delta_r)
}

/// Eigenvalue factor 1 − 2ΔR + 3ΔR² for a disk of radius 1 + ΔR.
pub fn inflate_eigen_factor(delta_r: f64) -> Result<f64> {
    let d = check_delta_r(delta_r)?;
    Ok(1.0 - 2.0 * d + 3.0 * d * d)
}

/// Eigenvalue λ of the unit disk mapped to the disk of radius 1 + ΔR.
pub fn inflate_disk(lambda: f64, delta_r: f64) -> Result<f64> {
    require_positive("eigenvalue", lambda)?;
    Ok(lambda * inflate_eigen_factor(delta_r)?)
}

/// Energy factor √(1 − 2ΔR + 3ΔR²), or √(1 − 2ΔR) when `simplified`.
pub fn inflate_energy_factor(delta_r: f64, simplified: bool) -> Result<f64> {
    let d = check_delta_r(delta_r)?;
    if simplified {
        Ok((1.0 - 2.0 * d).sqrt())
    } else {
        Ok(inflate_eigen_factor(d)?.sqrt())
    }
}
