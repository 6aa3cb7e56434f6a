use std::f64::consts::PI;

use super::SpecFunError;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// sin(πx) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(x: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Γ(x) for real x away from the poles at 0, −1, −2, …
///
/// Positive integers and half-integers are built as products; other
/// arguments ≥ 1/2 use Lanczos, and x < 1/2 goes through the reflection
/// formula.
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::Domain { function: "gamma_fn", arg: x });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { function: "gamma_fn", arg: x });
    }
    if x > 171.624_376_956_302_7 {
        return Err(SpecFunError::Range { function: "gamma_fn", arg: x });
    }
    if x == x.floor() && x <= 171.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return Ok(p);
    }
    if x > 0.0 && (2.0 * x) == (2.0 * x).floor() {
        // Γ(k + 1/2) = √π (1/2)(3/2)…(k − 1/2)
        let mut p = PI.sqrt();
        let mut k = 0.5;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return Ok(p);
    }
    if x < 0.5 {
        let g = gamma_fn(1.0 - x)?;
        let v = PI / (sin_pi(x) * g);
        return if v.is_finite() { Ok(v) } else { Err(SpecFunError::Range { function: "gamma_fn", arg: x }) };
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power to stay finite up to x ≈ 171.6
    let half = t.powf(0.5 * (z + 0.5));
    Ok(SQRT_2PI * half * (-t).exp() * half * lanczos_sum(z))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain { function: "ln_gamma", arg: x });
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Digamma ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x.is_infinite() {
        return Err(SpecFunError::Domain { function: "digamma", arg: x });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { function: "digamma", arg: x });
    }
    if x < 0.0 {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Σ B_2k / (2k x^2k), k = 1..7
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(acc + x.ln() - 0.5 / x - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert_eq!(gamma_fn(21.0).unwrap(), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn half_integers_from_reflection() {
        let sqrt_pi = PI.sqrt();
        assert!(rel(gamma_fn(0.5).unwrap(), sqrt_pi) < 1e-15);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * sqrt_pi) < 1e-14);
        // Γ(11/2) = 945 √π / 32
        assert!(rel(gamma_fn(5.5).unwrap(), 945.0 * sqrt_pi / 32.0) < 1e-14);
    }

    #[test]
    fn reference_values() {
        // mpmath, 40 digits
        let cases = [
            (0.1, 9.513_507_698_668_731_3),
            (4.5, 11.631_728_396_567_449),
            (-1.5, 2.363_271_801_207_354_7),
            (10.3, 716_430.689_062_376_4),
            (171.5, 9.483_367_566_824_799e307),
        ];
        for (x, want) in cases {
            let got = gamma_fn(x).unwrap();
            assert!(rel(got, want) < 1e-12, "Γ({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn poles_and_range() {
        assert!(matches!(gamma_fn(0.0), Err(SpecFunError::Pole { .. })));
        assert!(matches!(gamma_fn(-3.0), Err(SpecFunError::Pole { .. })));
        assert!(matches!(gamma_fn(200.0), Err(SpecFunError::Range { .. })));
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in [0.01, 0.3, 1.7, 12.5, 80.25] {
            let want = gamma_fn(x).unwrap().ln();
            assert!((ln_gamma(x).unwrap() - want).abs() < 1e-13 * want.abs().max(1.0));
        }
        assert!((ln_gamma(1e6).unwrap() - 12_815_504.569_147_61).abs() < 1e-6);
    }

    #[test]
    fn digamma_reference_values() {
        let cases = [
            (0.5, -1.963_510_026_021_423_5),
            (1.0, -0.577_215_664_901_532_9),
            (7.3, 1.917_820_335_637_986),
            (-0.7, -2.073_952_793_628_703_8),
        ];
        for (x, want) in cases {
            let got = digamma(x).unwrap();
            assert!((got - want).abs() < 1e-14, "ψ({x}) = {got}, want {want}");
        }
        assert!(digamma(-2.0).is_err());
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -6..=6 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.25) - 0.5f64.sqrt()).abs() < 3e-16);
    }
}
