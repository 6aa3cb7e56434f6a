//! Zeta-regularized Casimir energies of the circle, the polygon and the square.
//!
//! Energies are Laurent pairs in the regulator s: `finite + pole_residue / s`,
//! in units of 1/a.
//!
//! The circle's ζ(−1) is assembled from four pieces Z₀…Z₃ evaluated at s = 0.
//! Two sources are available. [`EnergySource::Formula`] evaluates the closed
//! forms of each piece; [`EnergySource::PaperConstants`] uses the published
//! constants. They disagree for Z₁, Z₂ and Z₃, and the published parts do not
//! add up to the published total; [`reconcile`] tabulates every gap.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::specfun::{
    bessel_i_scaled, bessel_k, bessel_k_scaled, compensated_sum, digamma, gamma_fn, hurwitz_zeta, integrate_finite,
    riemann_zeta, zeta_near_one, AccuracyBudget, CompensatedSum, LaurentValue, SpecFunError, EULER_GAMMA,
};
use crate::spectra::PolygonFactor;

/// Published constants for the circle and polygon energies.
pub mod published {
    use std::f64::consts::PI;

    /// Z₀(0) = π(0.02815 − 1/128).
    pub const Z0_INNER: f64 = 0.02815;
    /// Z₃(0) = −0.13679 (π/64) ζ(3).
    pub const Z3_BRACKET: f64 = -0.13679;
    /// ζ(−1) = 0.047189 − 1/(64 s), unit radius.
    pub const ZETA_MINUS_ONE_FINITE: f64 = 0.047189;
    pub const ZETA_MINUS_ONE_POLE: f64 = -1.0 / 64.0;
    /// E_C = 0.023595 − 1/(128 s), unit radius.
    pub const CIRCLE_FINITE: f64 = 0.023595;
    pub const CIRCLE_POLE: f64 = -1.0 / 128.0;
    /// E_N ≃ 0.029769 − 1.266783/(128 s) for the square (N = 4).
    pub const POLYGON4_FINITE: f64 = 0.029769;
    pub const POLYGON4_POLE: f64 = -1.266_783 / 128.0;
    /// E_S = 0.0415358, unit side.
    pub const SQUARE_ENERGY: f64 = 0.041_535_8;

    pub fn z0() -> f64 {
        PI * (Z0_INNER - 1.0 / 128.0)
    }

    pub fn z1() -> f64 {
        -PI / 12.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergySource {
    Formula,
    PaperConstants,
}

impl EnergySource {
    pub fn as_str(self) -> &'static str {
        match self {
            EnergySource::Formula => "formula",
            EnergySource::PaperConstants => "paper_constants",
        }
    }
}

/// Regularized energy in units of 1/a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaurentEnergy {
    pub finite: f64,
    pub pole_residue: f64,
    pub source: EnergySource,
}

impl LaurentEnergy {
    pub fn laurent(&self) -> LaurentValue {
        LaurentValue::new(self.finite, self.pole_residue)
    }
}

/// Z₀…Z₃ at s = 0, before the 1/a factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleZetaParts {
    pub z0: f64,
    pub z1: f64,
    pub z2: LaurentValue,
    pub z3: f64,
}

impl CircleZetaParts {
    /// (1/π) Σ Zᵢ, i.e. ζ(−1) for the unit circle.
    pub fn assembled(&self) -> LaurentValue {
        let finite = compensated_sum([self.z0, self.z1, self.z2.finite, self.z3]);
        LaurentValue::new(finite, self.z2.pole_residue) * (1.0 / PI)
    }
}

/// Settings for the Z₀ quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Z0Settings {
    pub budget: AccuracyBudget,
    /// Start of the analytic tail.
    pub tail_start: f64,
    /// Upper limit in v of the y = e^{−v} substitution on (0, 1].
    pub log_cutoff: f64,
}

impl Default for Z0Settings {
    fn default() -> Self {
        Self { budget: AccuracyBudget::new(1e-12, 1e-15, 4000).expect("valid"), tail_start: 30.0, log_cutoff: 45.0 }
    }
}

/// ln(2y I₀(y) K₀(y)) − (t²/8)(1 − 6t² + 5t⁴) with t² = 1/(1 + y²).
pub fn z0_integrand(y: f64) -> Result<f64> {
    require_positive("y", y)?;
    // the exponentials of the scaled functions cancel
    let i0 = bessel_i_scaled(0, y)?;
    let k0 = bessel_k_scaled(0.0, y)?;
    let t2 = 1.0 / (1.0 + y * y);
    Ok((2.0 * y * i0 * k0).ln() - t2 / 8.0 * (1.0 - 6.0 * t2 + 5.0 * t2 * t2))
}

// large-y expansion of the integrand: Σ c_k y^{−2k}, k = 2..4
const Z0_TAIL: [f64; 3] = [69.0 / 64.0, -113.0 / 96.0, 32_501.0 / 2048.0];

/// ∫_Y^∞ of the large-y expansion of [`z0_integrand`].
pub fn z0_tail(y: f64) -> f64 {
    Z0_TAIL[0] / (3.0 * y.powi(3)) + Z0_TAIL[1] / (5.0 * y.powi(5)) + Z0_TAIL[2] / (7.0 * y.powi(7))
}

/// Z₀(0) = −∫₀^∞ [`z0_integrand`] dy with default settings.
pub fn z0_at_zero() -> Result<f64> {
    z0_with(&Z0Settings::default())
}

/// Z₀(0) with explicit quadrature settings: y = e^{−v} on (0, 1], adaptive
/// Gauss–Kronrod on [1, Y], and the integrated expansion beyond Y.
pub fn z0_with(settings: &Z0Settings) -> Result<f64> {
    if !(settings.tail_start >= 10.0) || !settings.tail_start.is_finite() {
        return Err(Error::invalid("tail_start", "the tail expansion needs Y ≥ 10"));
    }
    let failure = std::cell::Cell::new(None);
    let f = |y: f64| match z0_integrand(y) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let near = integrate_finite(
        |v: f64| {
            let y = (-v).exp();
            f(y) * y
        },
        0.0,
        settings.log_cutoff,
        &settings.budget,
    );
    let mid = integrate_finite(f, 1.0, settings.tail_start, &settings.budget);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let total = compensated_sum([near?.value, mid?.value, z0_tail(settings.tail_start)]);
    Ok(-total)
}

/// S = Σ_{m≥1} Γ(m − 1/2)/(m Γ(m)), which equals 2√π.
///
/// Summed directly to M = 1000; beyond that the ratio
/// Γ(m−1/2)/Γ(m) = m^{−1/2}(1 + 3/(8m) + 25/(128m²) + 105/(1024m³) + …)
/// turns the tail into Hurwitz zeta values.
pub fn z1_series_sum() -> Result<f64> {
    const M: u32 = 1000;
    let mut ratio = gamma_fn(0.5)?; // Γ(1/2)/Γ(1)
    let mut terms = Vec::with_capacity(M as usize);
    for m in 1..=M {
        let mf = m as f64;
        terms.push(ratio / mf);
        ratio *= (mf - 0.5) / mf;
    }
    let q = M as f64 + 1.0;
    let hz = |s: f64| hurwitz_zeta(s, q);
    let tail = hz(1.5)? + 3.0 / 8.0 * hz(2.5)? + 25.0 / 128.0 * hz(3.5)? + 105.0 / 1024.0 * hz(4.5)?;
    terms.push(tail);
    terms.sort_by(f64::total_cmp);
    Ok(compensated_sum(terms))
}

/// Z₁(0) = (1/2) ζ(−1) Γ(−1/2) S as written; equals π/6.
pub fn z1_at_zero() -> Result<f64> {
    Ok(0.5 * riemann_zeta(-1.0)? * gamma_fn(-0.5)? * z1_series_sum()?)
}

/// Z₂(0) = (1/4) ζ(1+s) Γ((1+s)/2) P(s) with
/// P(s) = −1 + 3(1+s) − (5/8)(3+s)(1+s); P(0) = 1/8, P′(0) = 1/2.
pub fn z2_at_zero() -> Result<LaurentValue> {
    let p0 = -1.0 + 3.0 - 15.0 / 8.0;
    let dp0 = 3.0 - 5.0 / 8.0 * 4.0;
    let g_half = gamma_fn(0.5)?;
    // d/ds Γ((1+s)/2) at 0 = Γ(1/2) ψ(1/2) / 2
    let g0 = g_half * p0;
    let g1 = 0.5 * g_half * digamma(0.5)? * p0 + g_half * dp0;
    Ok(zeta_near_one(0.0).times_regular(g0, g1) * 0.25)
}

/// −13Γ(3/2) + 142Γ(5/2) − 177Γ(7/2) + (113/2)Γ(9/2) − (113/24)Γ(11/2).
pub fn z3_bracket() -> Result<f64> {
    let terms = [
        -13.0 * gamma_fn(1.5)?,
        142.0 * gamma_fn(2.5)?,
        -177.0 * gamma_fn(3.5)?,
        113.0 / 2.0 * gamma_fn(4.5)?,
        -113.0 / 24.0 * gamma_fn(5.5)?,
    ];
    Ok(compensated_sum(terms))
}

/// Z₃(0) = (1/32) ζ(3) Γ(3/2) × [`z3_bracket`].
pub fn z3_at_zero() -> Result<f64> {
    Ok(riemann_zeta(3.0)? * gamma_fn(1.5)? * z3_bracket()? / 32.0)
}

pub fn circle_zeta_parts(source: EnergySource) -> Result<CircleZetaParts> {
    match source {
        EnergySource::Formula => {
            Ok(CircleZetaParts { z0: z0_at_zero()?, z1: z1_at_zero()?, z2: z2_at_zero()?, z3: z3_at_zero()? })
        }
        EnergySource::PaperConstants => Ok(tabulated_parts()?),
    }
}

fn tabulated_parts() -> Result<CircleZetaParts> {
    Ok(CircleZetaParts {
        z0: published::z0(),
        z1: published::z1(),
        z2: LaurentValue::new(PI / 64.0 * EULER_GAMMA + PI / 128.0, PI / 64.0),
        z3: published::Z3_BRACKET * PI / 64.0 * riemann_zeta(3.0)?,
    })
}

/// E_C = ζ(−1)/2 for a circle of radius a.
///
/// With [`EnergySource::PaperConstants`] this is the published
/// (0.023595 − 1/(128 s))/a; with [`EnergySource::Formula`] it is half the
/// assembled Z₀…Z₃.
pub fn circle_casimir_energy(a: f64, source: EnergySource) -> Result<LaurentEnergy> {
    require_positive("radius", a)?;
    let value = match source {
        EnergySource::PaperConstants => LaurentValue::new(published::CIRCLE_FINITE, published::CIRCLE_POLE),
        EnergySource::Formula => circle_zeta_parts(source)?.assembled() * 0.5,
    } * (1.0 / a);
    Ok(LaurentEnergy { finite: value.finite, pole_residue: value.pole_residue, source })
}

/// E_N = √M_N E_C, both Laurent components scaled.
pub fn polygon_casimir_energy(factor: &PolygonFactor, a: f64, source: EnergySource) -> Result<LaurentEnergy> {
    let circle = circle_casimir_energy(a, source)?;
    let v = circle.laurent() * factor.frequency_scale();
    Ok(LaurentEnergy { finite: v.finite, pole_residue: v.pole_residue, source })
}

/// ζ_EH(s; p) = Σ_{n≥1} (n² + p)^{−s} through
/// −p^{−s}/2 + √π Γ(s−1/2)/(2Γ(s)) p^{1/2−s}
///   + 2π^s p^{(1/2−s)/2}/Γ(s) Σ n^{s−1/2} K_{s−1/2}(2πn√p).
pub fn epstein_hurwitz_zeta(s: f64, p: f64) -> Result<f64> {
    require_positive("p", p)?;
    if !s.is_finite() {
        return Err(Error::invalid("s", "must be finite"));
    }
    if s <= 0.0 && s == s.floor() {
        // 1/Γ(s) vanishes
        return Ok(-0.5 * p.powf(-s));
    }
    let nu = s - 0.5;
    if nu <= 0.0 && nu == nu.floor() {
        return Err(SpecFunError::Pole { function: "epstein_hurwitz_zeta", arg: s }.into());
    }
    let gs = gamma_fn(s)?;
    let first = -0.5 * p.powf(-s);
    let second = PI.sqrt() * gamma_fn(nu)? / (2.0 * gs) * p.powf(-nu);
    let bessel = bessel_tail(s, p)?;
    Ok(compensated_sum([first, second, 2.0 * PI.powf(s) * p.powf(-0.5 * nu) / gs * bessel]))
}

/// Σ_{n≥1} n^{s−1/2} K_{s−1/2}(2πn√p), stopped once terms fall below 1e-17
/// of the running total.
fn bessel_tail(s: f64, p: f64) -> Result<f64> {
    let nu = s - 0.5;
    let root = p.sqrt();
    let mut sum = CompensatedSum::new();
    for n in 1..100_000u32 {
        let z = 2.0 * PI * n as f64 * root;
        if z > 700.0 {
            break;
        }
        let term = (n as f64).powf(nu) * bessel_k(nu, z)?;
        sum.add(term);
        if term.abs() <= 1e-17 * sum.value().abs() {
            break;
        }
    }
    Ok(sum.value())
}

/// Pieces of the square's ζ(−1/2) (side a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareEnergyParts {
    /// −(1/2)(a/π)^{2s} ζ(2s) at s = −1/2: π/(24a).
    pub first: f64,
    /// Γ(s−1/2) ζ(2s−1) term in the limit s → −1/2: −ζ(3)/(8πa).
    pub second: f64,
    /// −(1/a) Σ_{m,n} (m/n) K₁(2πmn).
    pub bessel: f64,
    /// E_S = (first + second + bessel)/2.
    pub energy: f64,
    /// (first + second)/2, the energy without the Bessel double sum.
    pub energy_closed_form: f64,
}

/// −2ζ′(−2) = ζ(3)/(2π²), the finite limit of Γ(−1+ε) ζ(−2+2ε).
fn gamma_zeta_limit() -> Result<f64> {
    Ok(riemann_zeta(3.0)? / (2.0 * PI * PI))
}

/// Σ_{m,n≥1} (m/n)^{ν} K_ν(2πmn) with ν = s − 1/2.
fn square_bessel_sum(nu: f64) -> Result<f64> {
    let mut terms = Vec::new();
    for m in 1..200u32 {
        let mut row_first = None;
        for n in 1..200u32 {
            let z = 2.0 * PI * (m as f64) * (n as f64);
            if z > 700.0 {
                break;
            }
            let t = (m as f64 / n as f64).powf(nu) * bessel_k(nu, z)?;
            row_first.get_or_insert(t);
            terms.push(t);
            if t.abs() < 1e-20 {
                break;
            }
        }
        if row_first.is_none_or(|t: f64| t.abs() < 1e-20) {
            break;
        }
    }
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(compensated_sum(terms))
}

pub fn square_energy_parts(a: f64) -> Result<SquareEnergyParts> {
    require_positive("length", a)?;
    let first = PI / (24.0 * a);
    // (a/(2√π))(a/π)^{-2} Γ(s−1/2)ζ(2s−1)/Γ(s) at s = −1/2
    let second = PI.powf(1.5) / (2.0 * a) * gamma_zeta_limit()? / gamma_fn(-0.5)?;
    // (2/Γ(−1/2)) (a²/π)^{−1/2} = −1/a
    let bessel = -square_bessel_sum(-1.0)? / a;
    Ok(SquareEnergyParts {
        first,
        second,
        bessel,
        energy: 0.5 * compensated_sum([first, second, bessel]),
        energy_closed_form: 0.5 * (first + second),
    })
}

/// E_S = ζ(−1/2)/2 for the square of side a.
pub fn square_casimir_energy(a: f64) -> Result<f64> {
    Ok(square_energy_parts(a)?.energy)
}

/// The square's ζ(s) at a regular point s (side a), every term evaluated
/// numerically. Used to cross-check the analytic limit at s = −1/2.
pub fn square_zeta(s: f64, a: f64) -> Result<f64> {
    require_positive("length", a)?;
    let first = -0.5 * (a / PI).powf(2.0 * s) * riemann_zeta(2.0 * s)?;
    let second = a / (2.0 * PI.sqrt()) * (a / PI).powf(2.0 * s - 1.0) * gamma_fn(s - 0.5)? / gamma_fn(s)?
        * riemann_zeta(2.0 * s - 1.0)?;
    let third = 2.0 / gamma_fn(s)? * (a * a / PI).powf(s) * square_bessel_sum(s - 0.5)?;
    Ok(compensated_sum([first, second, third]))
}

/// One line of the formula-vs-published table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconciliationRow {
    pub part: String,
    pub formula: f64,
    pub paper: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

impl ReconciliationRow {
    fn new(part: &str, formula: f64, paper: f64) -> Self {
        let abs_gap = (formula - paper).abs();
        let rel_gap = if paper != 0.0 { abs_gap / paper.abs() } else { f64::INFINITY };
        Self { part: part.to_string(), formula, paper, abs_gap, rel_gap }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconciliationReport {
    pub rows: Vec<ReconciliationRow>,
}

impl ReconciliationReport {
    pub fn row(&self, part: &str) -> Option<&ReconciliationRow> {
        self.rows.iter().find(|r| r.part == part)
    }
}

/// Formula value against the published value for every piece of the circle
/// energy, the assembled totals, and the polygon and square energies.
pub fn reconcile() -> Result<ReconciliationReport> {
    let f = circle_zeta_parts(EnergySource::Formula)?;
    let p = tabulated_parts()?;
    let fz = f.assembled();
    let pz = p.assembled();
    let square = square_energy_parts(1.0)?;
    let factor = crate::spectra::polygon_factor(4, 4)?;
    let poly = polygon_casimir_energy(&factor, 1.0, EnergySource::PaperConstants)?;
    let rows = vec![
        ReconciliationRow::new("z0", f.z0, p.z0),
        ReconciliationRow::new("z1", f.z1, p.z1),
        ReconciliationRow::new("z2_finite", f.z2.finite, p.z2.finite),
        ReconciliationRow::new("z2_pole", f.z2.pole_residue, p.z2.pole_residue),
        ReconciliationRow::new("z3", f.z3, p.z3),
        ReconciliationRow::new("z3_bracket_over_sqrt_pi", z3_bracket()? / PI.sqrt(), published::Z3_BRACKET),
        ReconciliationRow::new("zeta_minus_one_finite", fz.finite, published::ZETA_MINUS_ONE_FINITE),
        ReconciliationRow::new("zeta_minus_one_pole", fz.pole_residue, published::ZETA_MINUS_ONE_POLE),
        ReconciliationRow::new("published_parts_sum_finite", pz.finite, published::ZETA_MINUS_ONE_FINITE),
        ReconciliationRow::new("published_parts_sum_pole", pz.pole_residue, published::ZETA_MINUS_ONE_POLE),
        ReconciliationRow::new("polygon4_finite", poly.finite, published::POLYGON4_FINITE),
        ReconciliationRow::new("polygon4_pole", poly.pole_residue, published::POLYGON4_POLE),
        ReconciliationRow::new("square_energy", square.energy, published::SQUARE_ENERGY),
        ReconciliationRow::new("square_energy_closed_form", square.energy_closed_form, published::SQUARE_ENERGY),
    ];
    Ok(ReconciliationReport { rows })
}

/// (E_S − finite(E_N))/E_S.
pub fn square_polygon_gap(square_energy: f64, polygon: &LaurentEnergy) -> f64 {
    (square_energy - polygon.finite) / square_energy
}
