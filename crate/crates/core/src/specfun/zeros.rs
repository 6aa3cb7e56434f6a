use std::f64::consts::PI;

use rayon::prelude::*;

use super::bessel_j::{bessel_j, bessel_j_pair};
use super::SpecFunError;

/// Leading McMahon estimate x_{m,n} ≈ nπ + (m − 1/2)π/2.
pub fn mcmahon_estimate(m: u32, n: u32) -> f64 {
    (n as f64 + 0.5 * m as f64 - 0.25) * PI
}

/// McMahon expansion through β⁻⁵.
fn mcmahon_refined(m: u32, n: u32) -> f64 {
    let beta = mcmahon_estimate(m, n);
    let mu = 4.0 * (m as f64) * (m as f64);
    let e = 8.0 * beta;
    let e3 = e * e * e;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e3 * e * e)
}

/// n-th zero of the Airy function (negative), asymptotic in t = 3π(4n−1)/8.
fn airy_zero(n: u32) -> f64 {
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let t2 = 1.0 / (t * t);
    -t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 - t2 * (5.0 / 36.0 - t2 * 77_125.0 / 82_944.0)))
}

/// Leading term ν·z(ζ) of the uniform large-order expansion of j_{ν,n}.
fn olver_estimate(m: u32, n: u32) -> f64 {
    let nu = m as f64;
    let zeta = nu.powf(-2.0 / 3.0) * airy_zero(n);
    // solve √(z²−1) − arcsec z = (2/3)(−ζ)^{3/2} for z > 1
    let w = (2.0 / 3.0) * (-zeta).powf(1.5);
    let mut z = if w < 1.0 { 1.0 + (3.0 * w / (2.0 * 2f64.sqrt())).powf(2.0 / 3.0) } else { w + 0.5 * PI };
    for _ in 0..60 {
        let r = (z * z - 1.0).sqrt();
        let step = (r - (1.0 / z).acos() - w) * z / r;
        let mut next = z - step;
        if next <= 1.0 {
            next = 0.5 * (z + 1.0);
        }
        if (next - z).abs() < 1e-15 * z {
            z = next;
            break;
        }
        z = next;
    }
    nu * z
}

fn sign_left_of(n: u32) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Safeguarded Newton for the root of J_m in (lo, hi). `sign_left` is the
/// sign of J_m just below the root.
fn refine(m: u32, mut lo: f64, mut hi: f64, guess: f64, sign_left: f64) -> Result<f64, SpecFunError> {
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    let mf = m as f64;
    for _ in 0..100 {
        let (jm1, jm) = bessel_j_pair(m, x)?;
        if jm == 0.0 {
            return Ok(x);
        }
        if jm * sign_left > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let deriv = jm1 - mf / x * jm;
        let mut next = x - jm / deriv;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let tol = 4.0 * f64::EPSILON * x;
        if (next - x).abs() <= tol || hi - lo <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(SpecFunError::Convergence { function: "bessel_j_zero", iterations: 100 })
}

/// The n-th positive zero of J_m, n ≥ 1.
///
/// An asymptotic estimate (McMahon for m ≤ 1 or n ≥ m², the uniform
/// large-order estimate otherwise) seeds a sign-change scan on a ±1.5 window;
/// the located bracket is refined by safeguarded Newton. If the scan does not
/// find a bracket with the right sign pattern the zero is taken from an
/// interlacing table instead.
pub fn bessel_j_zero(m: u32, n: u32) -> Result<f64, SpecFunError> {
    if n == 0 {
        return Err(SpecFunError::Domain { function: "bessel_j_zero", arg: 0.0 });
    }
    let guess =
        if m <= 1 || n as u64 >= (m as u64) * (m as u64) { mcmahon_refined(m, n) } else { olver_estimate(m, n) };
    let sign_left = sign_left_of(n);
    let step = 0.25;
    let start = (guess - 1.5).max(1e-3);
    let mut prev_x = start;
    let mut prev_f = bessel_j(m, prev_x)?;
    let mut best: Option<(f64, f64)> = None;
    for i in 1..=12 {
        let x = start + step * i as f64;
        let f = bessel_j(m, x)?;
        if prev_f * f <= 0.0 && prev_f * sign_left > 0.0 {
            let mid = 0.5 * (prev_x + x);
            if best.is_none_or(|(lo, hi)| (mid - guess).abs() < (0.5 * (lo + hi) - guess).abs()) {
                best = Some((prev_x, x));
            }
        }
        prev_x = x;
        prev_f = f;
    }
    match best {
        Some((lo, hi)) => refine(m, lo, hi, guess, sign_left),
        None => {
            let table = BesselZeroTable::new(m + 1, n)?;
            Ok(table.get(m, n).expect("table covers the requested index"))
        }
    }
}

/// Zeros x_{m,n} for m < `orders`, 1 ≤ n ≤ `count`.
///
/// Row m is bracketed by row m−1 through the interlacing
/// x_{m−1,n} < x_{m,n} < x_{m−1,n+1}, so every root is located with a
/// sign-change guarantee. Row 0 uses ((n−1/4)π, (n−1/8)π).
#[derive(Debug, Clone, PartialEq)]
pub struct BesselZeroTable {
    orders: usize,
    count: usize,
    zeros: Vec<f64>,
}

impl BesselZeroTable {
    pub fn new(orders: u32, count: u32) -> Result<Self, SpecFunError> {
        if orders == 0 || count == 0 {
            return Err(SpecFunError::Domain { function: "BesselZeroTable::new", arg: orders.min(count) as f64 });
        }
        let (orders, count) = (orders as usize, count as usize);
        let row_len = |m: usize| count + (orders - 1 - m);
        let mut zeros = Vec::with_capacity(orders * count);

        let row0: Vec<f64> = (1..=row_len(0) as u32)
            .into_par_iter()
            .map(|n| {
                let lo = (n as f64 - 0.25) * PI;
                let hi = (n as f64 - 0.125) * PI;
                refine(0, lo, hi, mcmahon_refined(0, n), sign_left_of(n))
            })
            .collect::<Result<_, _>>()?;
        zeros.extend_from_slice(&row0[..count]);

        let mut older: Vec<f64> = Vec::new();
        let mut prev = row0;
        for m in 1..orders {
            let mu = m as u32;
            let cur: Vec<f64> = (0..row_len(m))
                .into_par_iter()
                .map(|i| {
                    let (lo, hi) = (prev[i], prev[i + 1]);
                    let n = i as u32 + 1;
                    let guess = if m == 1 { mcmahon_refined(1, n) } else { 2.0 * prev[i] - older[i] };
                    let root = refine(mu, lo, hi, guess, sign_left_of(n))?;
                    debug_assert!(lo < root && root < hi);
                    Ok(root)
                })
                .collect::<Result<_, SpecFunError>>()?;
            zeros.extend_from_slice(&cur[..count]);
            older = prev;
            prev = cur;
        }
        Ok(Self { orders, count, zeros })
    }

    pub fn orders(&self) -> usize {
        self.orders
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// x_{m,n}, or `None` outside the table.
    pub fn get(&self, m: u32, n: u32) -> Option<f64> {
        let (m, n) = (m as usize, n as usize);
        if m >= self.orders || n == 0 || n > self.count {
            return None;
        }
        Some(self.zeros[m * self.count + n - 1])
    }

    /// Zeros of J_m, n = 1..=count.
    pub fn row(&self, m: u32) -> &[f64] {
        let m = m as usize;
        &self.zeros[m * self.count..(m + 1) * self.count]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath besseljzero, 40 digits
    const REFERENCE: [(u32, u32, f64); 12] = [
        (0, 1, 2.404_825_557_695_772_8),
        (0, 2, 5.520_078_110_286_310_6),
        (0, 3, 8.653_727_912_911_012),
        (1, 1, 3.831_705_970_207_512_3),
        (2, 1, 5.135_622_301_840_682_6),
        (10, 10, 45.231_574_103_535_045),
        (50, 1, 57.116_899_160_119_174),
        (50, 100, 388.693_660_065_605_9),
        (0, 1000, 3_140.807_295_225_078_6),
        (999, 1, 1_017.654_727_503_708_6),
        (999, 1000, 4_601.149_347_213_709),
        (500, 3, 535.502_486_858_293_9),
    ];

    #[test]
    fn single_zeros_match_reference() {
        for (m, n, want) in REFERENCE {
            let got = bessel_j_zero(m, n).unwrap();
            assert!(((got - want) / want).abs() < 1e-12, "x_({m},{n}) = {got}, want {want}");
        }
    }

    #[test]
    fn table_matches_reference_and_single_route() {
        let t = BesselZeroTable::new(51, 100).unwrap();
        for (m, n, want) in REFERENCE.iter().filter(|r| r.0 <= 50 && r.1 <= 100) {
            let got = t.get(*m, *n).unwrap();
            assert!(((got - want) / want).abs() < 1e-12);
        }
        for m in (0..=50).step_by(7) {
            for n in (1..=100).step_by(13) {
                let a = t.get(m, n).unwrap();
                let b = bessel_j_zero(m, n).unwrap();
                assert!(((a - b) / a).abs() < 1e-12, "({m},{n}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn large_index_approaches_leading_mcmahon() {
        for n in [200u32, 400, 800] {
            let x = bessel_j_zero(0, n).unwrap();
            let gap = x - (n as f64 * PI - PI / 4.0);
            assert!(gap > 0.0 && gap < 1.0 / (8.0 * (n as f64 - 0.25) * PI) + 1e-12);
        }
    }

    #[test]
    fn table_shape_and_lookup() {
        let t = BesselZeroTable::new(3, 3).unwrap();
        assert_eq!((t.orders(), t.count()), (3, 3));
        assert_eq!(t.row(2).len(), 3);
        assert!(t.get(3, 1).is_none());
        assert!(t.get(0, 0).is_none());
        assert!((t.get(2, 1).unwrap() - 5.135_622_301_840_683).abs() < 1e-13);
        assert!(BesselZeroTable::new(0, 3).is_err());
        assert!(bessel_j_zero(3, 0).is_err());
    }

    #[test]
    fn olver_estimate_is_close_for_large_order() {
        let est = olver_estimate(999, 1);
        assert!((est - 1_017.654_727_503_708_6).abs() < 0.1);
    }
}
