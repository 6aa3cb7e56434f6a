use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::SpecFunError;

const HANKEL_MIN_X: f64 = 20.0;

/// Bessel function of the first kind J_m(x), integer order m ≥ 0, real x ≥ 0.
pub fn bessel_j(m: u32, x: f64) -> Result<f64, SpecFunError> {
    check_arg(x)?;
    if m == 0 {
        return Ok(j0_direct(x));
    }
    Ok(j_pair(m, x).1)
}

/// (J_{m−1}(x), J_m(x)) for m ≥ 1; (−J_1(x), J_0(x)) for m = 0.
pub(crate) fn bessel_j_pair(m: u32, x: f64) -> Result<(f64, f64), SpecFunError> {
    check_arg(x)?;
    if m == 0 {
        let (j0, j1) = j_pair(1, x);
        return Ok((-j1, j0));
    }
    Ok(j_pair(m, x))
}

fn check_arg(x: f64) -> Result<(), SpecFunError> {
    if !x.is_finite() || x < 0.0 {
        return Err(SpecFunError::Domain { function: "bessel_j", arg: x });
    }
    Ok(())
}

fn j0_direct(x: f64) -> f64 {
    if use_series(0, x) {
        series(0, x)
    } else if x >= HANKEL_MIN_X {
        hankel(0, x)
    } else {
        miller(1, x).0
    }
}

fn use_series(m: u32, x: f64) -> bool {
    x <= 4.0 || 0.25 * x * x < (m + 1) as f64
}

/// Returns (J_{m−1}, J_m), m ≥ 1.
fn j_pair(m: u32, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (if m == 1 { 1.0 } else { 0.0 }, 0.0);
    }
    if use_series(m - 1, x) {
        return (series(m - 1, x), series(m, x));
    }
    if x >= HANKEL_MIN_X && x >= m as f64 {
        // forward recurrence is stable below the turning point
        let mut prev = hankel(0, x);
        let mut cur = hankel(1, x);
        let two_over_x = 2.0 / x;
        for k in 1..m {
            let next = (k as f64) * two_over_x * cur - prev;
            prev = cur;
            cur = next;
        }
        return (prev, cur);
    }
    miller(m, x)
}

/// Power series Σ (−x²/4)^k / (k!(m+k)!) · (x/2)^m.
fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=m {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let y = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= y / (k * (m as f64 + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    lead * sum
}

/// Hankel asymptotic expansion for ν ∈ {0, 1}, x ≥ 20.
fn hankel(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // cos and sin of x − (ν/2 + 1/4)π without subtracting an inexact π/4
    let (cos_chi, sin_chi) = if nu == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Miller backward recurrence normalized by 1 = J0 + 2ΣJ_{2k}. Returns (J_{m−1}, J_m).
fn miller(m: u32, x: f64) -> (f64, f64) {
    let top = (m as f64).max(x);
    let mut start = top as usize + 30 + (50.0 * top).sqrt() as usize;
    start += start % 2;
    let two_over_x = 2.0 / x;
    let (mut above, mut cur) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let (mut jm, mut jm1) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let below = k as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        let idx = k - 1;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            jm *= 1e-250;
            jm1 *= 1e-250;
        }
        if idx == m as usize {
            jm = cur;
        } else if idx + 1 == m as usize {
            jm1 = cur;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * cur;
        }
    }
    norm += cur;
    (jm1 / norm, jm / norm)
}
