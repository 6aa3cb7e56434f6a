//! Product spaces R^D × P_N and the polygonal cylinder.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::specfun::{
    bessel_j_zero, bessel_k_scaled, compensated_sum, gamma_fn, integrate, AccuracyBudget, IntegrationDomain, TailDecay,
};
use crate::spectra::{disk_frequencies, polygon_factor, Mode, PolygonFactor, Truncation};

/// R^D × P_N with regulator s (s = −1/2 for the energy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductSpaceSpec {
    pub dims: u32,
    pub sides: u32,
    pub s: f64,
}

impl ProductSpaceSpec {
    pub fn new(dims: u32, sides: u32, s: f64) -> Result<Self> {
        if sides < 3 {
            return Err(Error::invalid("sides", format!("a polygon needs at least 3 sides, got {sides}")));
        }
        if !s.is_finite() {
            return Err(Error::invalid("s", format!("must be finite, got {s}")));
        }
        Ok(Self { dims, sides, s })
    }

    /// (D − 1)/2 − s.
    pub fn exponent(&self) -> f64 {
        (self.dims as f64 - 1.0) / 2.0 - self.s
    }
}

/// M_N^{(D−1)/2 − s}, the factor taking the energy of R^D × B₂ to that of
/// R^D × P_N.
pub fn rd_polygon_scale(spec: &ProductSpaceSpec) -> Result<f64> {
    let spec = ProductSpaceSpec::new(spec.dims, spec.sides, spec.s)?;
    Ok(polygon_factor(spec.sides, 4)?.value.powf(spec.exponent()))
}

/// ∫ d^d k (k² + A)^{−s} in closed form and by quadrature, d ∈ {1, 2}.
///
/// Closed form: π^{d/2} Γ(s − d/2)/Γ(s) · A^{d/2 − s}.
pub fn dimensional_reduction_check(s: f64, area: f64, d: u32) -> Result<(f64, f64)> {
    require_positive("A", area)?;
    if !(1..=2).contains(&d) {
        return Err(Error::invalid("d", format!("dimension must be 1 or 2, got {d}")));
    }
    let half_d = d as f64 / 2.0;
    if !(s.is_finite() && s > half_d) {
        return Err(Error::invalid("s", format!("the integral diverges unless s > {half_d}, got {s}")));
    }
    let closed = PI.powf(half_d) * gamma_fn(s - half_d)? / gamma_fn(s)? * area.powf(half_d - s);
    let budget = AccuracyBudget::new(1e-13, 1e-300, 4000)?;
    let q = if d == 1 {
        let tail = TailDecay::Power { exponent: 2.0 * s };
        2.0 * integrate(|k| (k * k + area).powf(-s), IntegrationDomain::SemiInfinite { a: 0.0, tail }, &budget)?.value
    } else {
        let tail = TailDecay::Power { exponent: 2.0 * s - 1.0 };
        2.0 * PI
            * integrate(|k| k * (k * k + area).powf(-s), IntegrationDomain::SemiInfinite { a: 0.0, tail }, &budget)?
                .value
    };
    Ok((closed, q))
}

/// A cylinder of length `length` over the unit-radius regular polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderConfig {
    pub length: f64,
    pub sides: u32,
    /// Number of transverse modes kept (the lowest ones).
    pub modes: u32,
    /// Terms of the K₁ series per mode.
    pub terms: u32,
}

impl CylinderConfig {
    pub fn new(length: f64, sides: u32, modes: u32, terms: u32) -> Result<Self> {
        require_positive("length", length)?;
        if sides < 3 {
            return Err(Error::invalid("sides", format!("a polygon needs at least 3 sides, got {sides}")));
        }
        if modes == 0 {
            return Err(Error::invalid("count", "at least one transverse mode is needed"));
        }
        if terms == 0 {
            return Err(Error::invalid("terms", "at least one series term is needed"));
        }
        Ok(Self { length, sides, modes, terms })
    }

    fn factor(&self) -> Result<PolygonFactor> {
        polygon_factor(self.sides, 4)
    }

    /// The lowest `modes` transverse frequencies √M_N x_{m,n}, ascending.
    pub fn transverse_frequencies(&self) -> Result<Vec<f64>> {
        let cfg = Self::new(self.length, self.sides, self.modes, self.terms)?;
        let scale = cfg.factor()?.frequency_scale();
        let disk = disk_frequencies(1.0, Truncation::Global { count: cfg.modes })?;
        Ok(disk.frequencies().map(|x| x * scale).collect())
    }
}

fn sum_by_magnitude(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    compensated_sum(terms)
}

/// −(1/2π) Σ_modes Σ_{j=1..J} (1/j) ω K₁(2jωa).
///
/// The j-series of a mode stops early once a term falls below 1e-16 of the
/// first one.
pub fn cylinder_energy_exact(cfg: &CylinderConfig) -> Result<f64> {
    let omegas = cfg.transverse_frequencies()?;
    let a = cfg.length;
    let per_mode: Vec<Vec<f64>> = omegas
        .par_iter()
        .map(|&w| {
            let mut out = Vec::new();
            for j in 1..=cfg.terms {
                let z = 2.0 * j as f64 * w * a;
                let t = w / j as f64 * bessel_k_scaled(1.0, z)? * (-z).exp();
                if out.first().is_some_and(|&f: &f64| t < 1e-16 * f) {
                    break;
                }
                out.push(t);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(-sum_by_magnitude(per_mode.into_iter().flatten().collect()) / (2.0 * PI))
}

/// Leading large-argument form of [`cylinder_energy_exact`]: j = 1 only and
/// K₁(z) ≈ √(π/2z) e^{−z}. Needs 2 ω_min a ≥ 5.
pub fn cylinder_energy_asymptotic(cfg: &CylinderConfig) -> Result<f64> {
    let omegas = cfg.transverse_frequencies()?;
    let a = cfg.length;
    let z_min = 2.0 * omegas[0] * a;
    if z_min < 5.0 {
        return Err(Error::Regime { quantity: "2*omega_min*length", value: z_min, required: 5.0 });
    }
    let terms = omegas
        .iter()
        .map(|&w| {
            let z = 2.0 * w * a;
            w * (PI / (2.0 * z)).sqrt() * (-z).exp()
        })
        .collect();
    Ok(-sum_by_magnitude(terms) / (2.0 * PI))
}

/// TM eigenfrequency √((kπ/a)² + ω_{m,n}²) of the polygonal resonator.
///
/// Summed over k these are the cylinder's scalar modes, so the Casimir sum
/// over them is [`cylinder_energy_exact`].
pub fn resonator_tm_mode(k: u32, mode: Mode, cfg: &CylinderConfig) -> Result<f64> {
    let cfg = CylinderConfig::new(cfg.length, cfg.sides, cfg.modes, cfg.terms)?;
    if k == 0 || mode.n == 0 {
        return Err(Error::invalid("mode", "k and n start at 1"));
    }
    let w = cfg.factor()?.frequency_scale() * bessel_j_zero(mode.m, mode.n)?;
    Ok((k as f64 * PI / cfg.length).hypot(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_k;

    const M4: f64 = 1.604_741_176_846_687;

    #[test]
    fn rd_scale_examples() {
        let e0 = rd_polygon_scale(&ProductSpaceSpec::new(0, 4, -0.5).unwrap()).unwrap();
        assert!((e0 - 1.0).abs() < 1e-15);
        let e2 = rd_polygon_scale(&ProductSpaceSpec::new(2, 4, -0.5).unwrap()).unwrap();
        assert!((e2 - M4).abs() < 1e-14);
        let e3 = rd_polygon_scale(&ProductSpaceSpec::new(3, 4, -0.5).unwrap()).unwrap();
        assert!((e3 - 2.032_860_113_927_223).abs() < 1e-13);
        let big = rd_polygon_scale(&ProductSpaceSpec::new(3, 1_000_000, -0.5).unwrap()).unwrap();
        assert!((big - 1.0).abs() < 1e-10);
        for d in 0..5 {
            let lo = rd_polygon_scale(&ProductSpaceSpec::new(d, 5, -0.5).unwrap()).unwrap();
            let hi = rd_polygon_scale(&ProductSpaceSpec::new(d + 1, 5, -0.5).unwrap()).unwrap();
            let sqrt_m = polygon_factor(5, 4).unwrap().frequency_scale();
            assert!((hi - lo * sqrt_m).abs() < 1e-13 * hi);
        }
        assert!(ProductSpaceSpec::new(1, 2, -0.5).is_err());
    }

    #[test]
    fn dimensional_reduction_examples() {
        let (c, q) = dimensional_reduction_check(2.0, 1.0, 1).unwrap();
        assert!((c - PI / 2.0).abs() < 1e-12 && (q - PI / 2.0).abs() < 1e-10);
        let (c4, q4) = dimensional_reduction_check(2.0, 4.0, 1).unwrap();
        assert!((c4 - c * 4f64.powf(-1.5)).abs() < 1e-14);
        assert!((q4 - c4).abs() < 1e-10);
        let (c, q) = dimensional_reduction_check(3.0, 1.0, 2).unwrap();
        assert!((c - PI / 2.0).abs() < 1e-12 && (q - c).abs() < 1e-10);
        assert!(dimensional_reduction_check(0.5, 1.0, 1).is_err());
        assert!(dimensional_reduction_check(1.0, 1.0, 2).is_err());
        assert!(dimensional_reduction_check(2.0, 1.0, 3).is_err());
    }

    #[test]
    fn cylinder_single_mode_matches_k1() {
        let cfg = CylinderConfig::new(0.7, 4, 1, 1).unwrap();
        let w = M4.sqrt() * 2.404_825_557_695_773;
        let want = -w * bessel_k(1.0, 2.0 * w * 0.7).unwrap() / (2.0 * PI);
        assert!((cylinder_energy_exact(&cfg).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn cylinder_exact_vs_asymptotic() {
        let cfg = CylinderConfig::new(2.0, 4, 10, 8).unwrap();
        let exact = cylinder_energy_exact(&cfg).unwrap();
        let asym = cylinder_energy_asymptotic(&cfg).unwrap();
        let z = 2.0 * cfg.transverse_frequencies().unwrap()[0] * 2.0;
        let ratio = exact / asym;
        // K₁(z)/√(π/2z)e^{−z} = 1 + 3/(8z) + …
        assert!(exact < 0.0 && asym < 0.0);
        assert!(ratio > 1.0 && ratio - 1.0 < 3.0 / z, "{ratio}");
        assert!((ratio - 1.0 - 3.0 / (8.0 * z)).abs() < 0.01);
    }

    #[test]
    fn asymptotic_rejects_short_cylinder() {
        let cfg = CylinderConfig::new(0.5, 4, 3, 4).unwrap();
        match cylinder_energy_asymptotic(&cfg) {
            Err(Error::Regime { value, .. }) => assert!(value < 5.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn doubling_length_suppresses_energy() {
        let e1 = cylinder_energy_exact(&CylinderConfig::new(2.0, 4, 5, 4).unwrap()).unwrap();
        let e2 = cylinder_energy_exact(&CylinderConfig::new(4.0, 4, 5, 4).unwrap()).unwrap();
        let w = M4.sqrt() * 2.404_825_557_695_773;
        let r = e2 / e1 / (-2.0 * w * 2.0).exp();
        assert!(r > 0.5 && r < 1.0, "{r}");
    }

    #[test]
    fn tm_modes() {
        let cfg = CylinderConfig::new(PI, 4, 1, 1).unwrap();
        let x01 = 2.404_825_557_695_773;
        let f = resonator_tm_mode(1, Mode::new(0, 1), &cfg).unwrap();
        assert!((f - (1.0 + M4 * x01 * x01).sqrt()).abs() < 1e-13);
        let long = CylinderConfig::new(1e12, 4, 1, 1).unwrap();
        let f = resonator_tm_mode(1, Mode::new(0, 1), &long).unwrap();
        assert!((f - M4.sqrt() * x01).abs() < 1e-12);
        assert!(resonator_tm_mode(0, Mode::new(0, 1), &cfg).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(CylinderConfig::new(0.0, 4, 1, 1).is_err());
        assert!(CylinderConfig::new(1.0, 2, 1, 1).is_err());
        assert!(CylinderConfig::new(1.0, 4, 0, 1).is_err());
        assert!(CylinderConfig::new(1.0, 4, 1, 0).is_err());
    }
}
