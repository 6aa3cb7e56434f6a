//! Special functions and quadrature used by every other module.
//!
//! | Function | Notes |
//! |----------|-------|
//! | [`bessel_j`] | J_m(x), integer order |
//! | [`bessel_j_zero`] | n-th positive zero of J_m |
//! | [`BesselZeroTable`] | rows of zeros built with interlacing brackets |
//! | [`mod_bessel`] | I0, I1, K0, K1 and K_ν of real order |
//! | [`gamma_fn`], [`digamma`] | Lanczos with reflection |
//! | [`riemann_zeta`], [`zeta_near_one`] | Euler–Maclaurin plus functional equation |
//! | [`integrate`] | adaptive Gauss–Kronrod, finite or semi-infinite |
//! | [`CompensatedSum`] | Neumaier summation |
//!
//! Everything here is pure; no function keeps state between calls.

mod bessel_j;
mod gamma;
mod laurent;
mod modified;
mod quadrature;
mod sum;
mod zeros;
mod zeta;

pub use bessel_j::bessel_j;
pub use gamma::{digamma, gamma_fn, ln_gamma};
pub use laurent::LaurentValue;
pub use modified::{bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, mod_bessel, ModBessel};
pub use quadrature::{integrate, integrate_finite, IntegrationDomain, Quadrature, TailDecay};
pub use sum::{compensated_sum, CompensatedSum};
pub use zeros::{bessel_j_zero, mcmahon_estimate, BesselZeroTable};
pub(crate) use zeta::hurwitz_zeta;
pub use zeta::{riemann_zeta, zeta_near_one};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Errors from special-function evaluation and quadrature.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("{function}: argument {arg} outside the domain")]
    Domain { function: &'static str, arg: f64 },
    #[error("{function}: pole at {arg}")]
    Pole { function: &'static str, arg: f64 },
    #[error("{function}: result out of range at {arg} (overflow or underflow)")]
    Range { function: &'static str, arg: f64 },
    #[error("{function}: no convergence after {iterations} iterations")]
    Convergence { function: &'static str, iterations: usize },
    #[error("quadrature budget exhausted: estimate {estimate}, error bound {error_bound}")]
    BudgetExhausted { estimate: f64, error_bound: f64 },
}

/// Tolerances and term limits for adaptive procedures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBudget {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on subdivisions (quadrature) or series terms.
    pub max_terms: usize,
}

impl AccuracyBudget {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self, SpecFunError> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(SpecFunError::Domain { function: "AccuracyBudget::rel_tol", arg: rel_tol });
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(SpecFunError::Domain { function: "AccuracyBudget::abs_tol", arg: abs_tol });
        }
        if max_terms == 0 {
            return Err(SpecFunError::Domain { function: "AccuracyBudget::max_terms", arg: 0.0 });
        }
        Ok(Self { rel_tol, abs_tol, max_terms })
    }

    /// Tolerance accepted for a result of magnitude `value`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-14, max_terms: 2000 }
    }
}
