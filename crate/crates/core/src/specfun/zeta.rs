use std::f64::consts::PI;

use super::gamma::{gamma_fn, sin_pi};
use super::{LaurentValue, SpecFunError};

// B_2k / (2k)!, k = 1..12
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 14_101_100_039_391_805_440_000.0,
    -236_364_091.0 / 1_693_824_136_731_743_669_452_800_000.0,
];

const EM_SHIFT: usize = 16;

/// Euler–Maclaurin evaluation of ζ(s, q), with `delta` = s − 1 passed
/// separately so the caller controls its rounding. With `drop_pole` the term
/// (q+N)^{1−s}/(s−1) becomes ((q+N)^{1−s} − 1)/(s−1), finite as s → 1.
fn euler_maclaurin(s: f64, delta: f64, q: f64, drop_pole: bool) -> f64 {
    let mut explicit = 0.0;
    let mut c = 0.0;
    // sum from the smallest term upward
    for k in (0..EM_SHIFT).rev() {
        let term = (q + k as f64).powf(-s);
        let y = term - c;
        let t = explicit + y;
        c = (t - explicit) - y;
        explicit = t;
    }
    let big = q + EM_SHIFT as f64;
    let ln_big = big.ln();
    let integral = if drop_pole {
        if delta == 0.0 {
            -ln_big
        } else {
            (-delta * ln_big).exp_m1() / delta
        }
    } else {
        (-delta * ln_big).exp() / delta
    };
    let mut corr = 0.5 * big.powf(-s);
    // rising factorial s(s+1)…(s+2k−2) times big^{−s−2k+1}
    let mut rising = s;
    let mut power = big.powf(-s - 1.0);
    let inv_big2 = 1.0 / (big * big);
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        corr += b * rising * power;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power *= inv_big2;
    }
    explicit + integral + corr
}

/// Hurwitz zeta ζ(s, q) = Σ_{k≥0} (q+k)^{−s} for s > 1 − 2·12 and q > 0, s ≠ 1.
pub(crate) fn hurwitz_zeta(s: f64, q: f64) -> Result<f64, SpecFunError> {
    if !(q > 0.0) || !s.is_finite() || !q.is_finite() {
        return Err(SpecFunError::Domain { function: "hurwitz_zeta", arg: q });
    }
    if s == 1.0 {
        return Err(SpecFunError::Pole { function: "hurwitz_zeta", arg: s });
    }
    Ok(euler_maclaurin(s, s - 1.0, q, false))
}

/// Riemann ζ(s) for real s ≠ 1.
///
/// Euler–Maclaurin for s ≥ 0 and the functional equation
/// ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s) for s < 0.
pub fn riemann_zeta(s: f64) -> Result<f64, SpecFunError> {
    if s.is_nan() {
        return Err(SpecFunError::Domain { function: "riemann_zeta", arg: s });
    }
    if s == 1.0 {
        return Err(SpecFunError::Pole { function: "riemann_zeta", arg: s });
    }
    if s == f64::INFINITY {
        return Ok(1.0);
    }
    if s >= 0.0 {
        if s > 60.0 {
            // 2^{-s} already below the last bit
            return Ok(1.0 + 2f64.powf(-s));
        }
        return Ok(euler_maclaurin(s, s - 1.0, 1.0, false));
    }
    if s == f64::NEG_INFINITY {
        return Err(SpecFunError::Domain { function: "riemann_zeta", arg: s });
    }
    let sine = sin_pi(0.5 * s);
    if sine == 0.0 {
        return Ok(0.0);
    }
    let g = gamma_fn(1.0 - s).map_err(|_| SpecFunError::Range { function: "riemann_zeta", arg: s })?;
    let v = 2f64.powf(s) * PI.powf(s - 1.0) * sine * g * riemann_zeta(1.0 - s)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Range { function: "riemann_zeta", arg: s })
    }
}

/// ζ(1 + δ) as a Laurent pair: pole residue 1 and finite part ζ(1+δ) − 1/δ.
///
/// The finite part is computed without the cancellation of the naive
/// subtraction; at δ = 0 it equals the Euler–Mascheroni constant.
pub fn zeta_near_one(s_offset: f64) -> LaurentValue {
    LaurentValue::new(euler_maclaurin(1.0 + s_offset, s_offset, 1.0, true), 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zeta_two_against_euler_maclaurin_oracle() {
        // independent oracle: Σ_{n≤N} 1/n² + 1/N − 1/(2N²) + 1/(6N³) − 1/(30N⁵)
        let n = 1000u32;
        let head: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64).powi(2)).sum();
        let nf = n as f64;
        let oracle = head + 1.0 / nf - 0.5 / nf.powi(2) + 1.0 / (6.0 * nf.powi(3)) - 1.0 / (30.0 * nf.powi(5));
        let z2 = riemann_zeta(2.0).unwrap();
        assert!((z2 - oracle).abs() < 1e-14);
        assert!((z2 * 6.0 / (PI * PI) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_three_direct_summation_with_tail_bound() {
        // Σ_{n≤N} n⁻³ + ∫_N^∞ tail with midpoint correction; error < 1/N⁴
        let n = 20_000u32;
        let head: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64).powi(3)).sum();
        let nf = n as f64;
        let oracle = head + 0.5 / nf.powi(2) - 0.5 / nf.powi(3);
        let z3 = riemann_zeta(3.0).unwrap();
        assert!((z3 - oracle).abs() < 1e-15);
        assert!((z3 - 1.202_056_903_159_594_3).abs() < 1e-15);
    }

    #[test]
    fn negative_arguments_via_functional_equation() {
        assert!((riemann_zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(riemann_zeta(-2.0).unwrap(), 0.0);
        assert!((riemann_zeta(0.0).unwrap() + 0.5).abs() < 1e-15);
        let cases = [
            (0.5, -1.460_354_508_809_586_8),
            (1.5, 2.612_375_348_685_488_3),
            (-0.5, -0.207_886_224_977_354_57),
            (-3.5, 0.004_441_011_335_479_432),
            (1.001, 1_000.577_288_476_011_6),
            (0.999, -999.422_857_155_787_9),
            (-9.5, -0.006_672_172_296_466_640_8),
        ];
        for (s, want) in cases {
            let got = riemann_zeta(s).unwrap();
            assert!(rel(got, want) < 1e-12, "ζ({s}) = {got}, want {want}");
        }
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(riemann_zeta(1.0), Err(SpecFunError::Pole { .. })));
    }

    #[test]
    fn near_one_laurent_pair() {
        let z = zeta_near_one(0.0);
        assert_eq!(z.pole_residue, 1.0);
        assert!((z.finite - EULER_GAMMA).abs() < 1e-15);

        // two-point Richardson on the naive subtraction ζ(1+s) − 1/s
        let d = 1e-3;
        let plus = riemann_zeta(1.0 + d).unwrap() - 1.0 / d;
        let minus = riemann_zeta(1.0 - d).unwrap() + 1.0 / d;
        assert!((0.5 * (plus + minus) - EULER_GAMMA).abs() < 1e-5);

        // even error term: finite(−δ) + finite(δ) = 2γ + O(δ²)
        for d in [1e-2, 1e-3, 1e-4] {
            let sym = zeta_near_one(d).finite + zeta_near_one(-d).finite;
            assert!((sym - 2.0 * EULER_GAMMA).abs() < 0.1 * d * d, "δ={d}");
            // 1 + d rounds, so subtract the pole at the rounded offset
            let s = 1.0 + d;
            let direct = riemann_zeta(s).unwrap() - 1.0 / (s - 1.0);
            assert!((zeta_near_one(d).finite - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn hurwitz_tail_matches_direct_sum() {
        // Σ_{m>1000} m^{-3/2}
        let head: f64 = (1..=1000u32).rev().map(|k| (k as f64).powf(-1.5)).sum();
        let tail = hurwitz_zeta(1.5, 1001.0).unwrap();
        assert!((head + tail - riemann_zeta(1.5).unwrap()).abs() < 1e-14);
    }
}
