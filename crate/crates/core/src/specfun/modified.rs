use std::f64::consts::PI;

use super::gamma::ln_gamma;
use super::SpecFunError;

/// Largest argument accepted by the unscaled functions.
pub const MAX_UNSCALED_ARG: f64 = 700.0;

// Taylor coefficients of 1/Γ(1+x) about x = 0.
const RECIP_GAMMA: [f64; 29] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
];

/// Selector for [`mod_bessel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModBessel {
    I0,
    I1,
    K0,
    K1,
    /// K_ν of real order.
    K(f64),
}

/// Modified Bessel functions I0, I1, K0, K1 and K_ν on z ∈ (0, 700].
pub fn mod_bessel(kind: ModBessel, z: f64) -> Result<f64, SpecFunError> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(SpecFunError::Domain { function: "mod_bessel", arg: z });
    }
    match kind {
        ModBessel::I0 => bessel_i(0, z),
        ModBessel::I1 => bessel_i(1, z),
        ModBessel::K0 => bessel_k(0.0, z),
        ModBessel::K1 => bessel_k(1.0, z),
        ModBessel::K(nu) => bessel_k(nu, z),
    }
}

/// I_n(z) for integer n ≥ 0 and 0 ≤ z ≤ 700.
pub fn bessel_i(n: u32, z: f64) -> Result<f64, SpecFunError> {
    let scaled = bessel_i_scaled(n, z)?;
    if z > MAX_UNSCALED_ARG {
        return Err(SpecFunError::Range { function: "bessel_i", arg: z });
    }
    Ok(scaled * z.exp())
}

/// e^{−z} I_n(z) for integer n ≥ 0 and z ≥ 0.
pub fn bessel_i_scaled(n: u32, z: f64) -> Result<f64, SpecFunError> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(SpecFunError::Domain { function: "bessel_i", arg: z });
    }
    if z == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    if z <= 25.0 || z < nf * nf {
        // all terms positive
        let lead = match n {
            0 => (-z).exp(),
            1 => 0.5 * z * (-z).exp(),
            _ => (nf * (0.5 * z).ln() - ln_gamma(nf + 1.0)? - z).exp(),
        };
        let y = 0.25 * z * z;
        let (mut term, mut sum, mut k) = (1.0, 1.0, 1.0);
        loop {
            term *= y / (k * (nf + k));
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            k += 1.0;
        }
        return Ok(lead * sum);
    }
    // e^z/√(2πz) Σ (−1)^k a_k(n) / z^k
    let mu = 4.0 * nf * nf;
    let eight_z = 8.0 * z;
    let (mut term, mut sum) = (1.0, 1.0);
    let mut last = f64::INFINITY;
    for k in 1..100u32 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * eight_z);
        if term.abs() >= last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        sum += term;
    }
    Ok(sum / (2.0 * PI * z).sqrt())
}

/// K_ν(z) for real ν and 0 < z ≤ 700.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64, SpecFunError> {
    if z > MAX_UNSCALED_ARG {
        return Err(SpecFunError::Range { function: "bessel_k", arg: z });
    }
    let v = k_core(nu, z, false)?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(SpecFunError::Range { function: "bessel_k", arg: z })
    }
}

/// e^{z} K_ν(z) for real ν and z > 0.
pub fn bessel_k_scaled(nu: f64, z: f64) -> Result<f64, SpecFunError> {
    let v = k_core(nu, z, true)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SpecFunError::Range { function: "bessel_k_scaled", arg: z })
    }
}

/// (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ) and (1/Γ(1−μ) + 1/Γ(1+μ))/2 for |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> (f64, f64) {
    let mut even = 0.0;
    let mut odd = 0.0;
    let mu2 = mu * mu;
    let mut p = 1.0;
    for pair in RECIP_GAMMA.chunks(2) {
        even += pair[0] * p;
        if let Some(&c) = pair.get(1) {
            odd += c * p;
        }
        p *= mu2;
    }
    (-odd, even)
}

/// Temme series (z < 2) or Steed's continued fraction (z ≥ 2) for
/// |μ| ≤ 1/2, then upward recurrence to ν.
fn k_core(nu: f64, z: f64, scaled: bool) -> Result<f64, SpecFunError> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(SpecFunError::Domain { function: "bessel_k", arg: z });
    }
    if !nu.is_finite() {
        return Err(SpecFunError::Domain { function: "bessel_k", arg: nu });
    }
    let nu = nu.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let mu2 = mu * mu;
    let two_over_z = 2.0 / z;
    let (mut k_mu, mut k_mu1);
    if z < 2.0 {
        let half = 0.5 * z;
        let pimu = PI * mu;
        let fact = if pimu.abs() < 1e-15 { 1.0 } else { pimu / pimu.sin() };
        let d = -half.ln();
        let e = mu * d;
        let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };
        let (gam1, gam2) = temme_gammas(mu);
        let gampl = gam2 - mu * gam1;
        let gammi = gam2 + mu * gam1;
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = half * half;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..500 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * 1e-17 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecFunError::Convergence { function: "bessel_k", iterations: 500 });
        }
        let scale = if scaled { z.exp() } else { 1.0 };
        k_mu = sum * scale;
        k_mu1 = sum1 * two_over_z * scale;
    } else {
        let mut b = 2.0 * (1.0 + z);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 1..2000 {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < 1e-17 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecFunError::Convergence { function: "bessel_k", iterations: 2000 });
        }
        h *= a1;
        let lead = (PI / (2.0 * z)).sqrt() / s;
        k_mu = if scaled { lead } else { lead * (-z).exp() };
        k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
    }
    for i in 1..=(nl as u64) {
        let next = (mu + i as f64) * two_over_z * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    Ok(k_mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{integrate, AccuracyBudget, IntegrationDomain, TailDecay, EULER_GAMMA};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // mpmath, 40 digits: z, I0, I1, K0, K1, K_1.5, K_0.3, K_7.25
    const TABLE: [[f64; 8]; 8] = [
        [
            0.001,
            1.000_000_250_000_015_6,
            0.000_500_000_062_500_002_6,
            7.023_688_800_562_381,
            999.996_238_156_085_6,
            39_633.253_172_629_76,
            14.406_547_529_041_027,
            4.944_958_852_523_7e26,
        ],
        [
            0.5,
            1.063_483_370_741_323_5,
            0.257_894_305_390_896_3,
            0.924_419_071_227_665_9,
            1.656_441_120_003_300_9,
            3.225_142_810_499_760_7,
            0.976_474_124_381_787_9,
            13_252_302.679_019_084,
        ],
        [
            1.0,
            1.266_065_877_752_008_4,
            0.565_159_103_992_485,
            0.421_024_438_240_708_35,
            0.601_907_230_197_234_6,
            0.922_137_008_895_789_1,
            0.435_076_024_208_802,
            84_499.917_665_712_48,
        ],
        [
            2.0,
            2.279_585_302_336_067_3,
            1.590_636_854_637_329,
            0.113_893_872_749_533_44,
            0.139_865_881_816_522_43,
            0.179_906_657_952_092_17,
            0.116_036_974_348_119_26,
            493.421_398_728_609_96,
        ],
        [
            5.0,
            27.239_871_823_604_447,
            24.335_642_142_450_527,
            0.003_691_098_334_042_594_3,
            0.004_044_613_445_452_164,
            0.004_531_936_049_571_459,
            0.003_721_669_328_873_425_5,
            0.298_464_914_227_699_3,
        ],
        [
            25.0,
            5_774_560_606.466_31,
            5_657_865_129.878_701,
            3.464_161_562_213_114_4e-12,
            3.532_778_073_199_934e-12,
            3.620_438_927_914_323e-12,
            3.470_282_759_936_808_6e-12,
            9.651_553_489_949_127e-12,
        ],
        [
            30.0,
            781_672_297_823.977_5,
            768_532_038_938.957,
            2.132_477_496_463_056_4e-14,
            2.167_732_001_891_549_4e-14,
            2.212_612_151_487_878_4e-14,
            2.135_627_028_326_094_8e-14,
            5.029_955_101_464_087e-14,
        ],
        [
            100.0,
            1.073_751_707_131_073_8e42,
            1.068_369_390_338_162_5e42,
            4.656_628_229_175_902e-45,
            4.679_853_735_636_909_3e-45,
            4.709_048_050_761_018e-45,
            4.658_713_811_548_968e-45,
            6.047_787_409_803_583e-45,
        ],
    ];

    #[test]
    fn reference_table() {
        for row in TABLE {
            let z = row[0];
            let got = [
                mod_bessel(ModBessel::I0, z).unwrap(),
                mod_bessel(ModBessel::I1, z).unwrap(),
                mod_bessel(ModBessel::K0, z).unwrap(),
                mod_bessel(ModBessel::K1, z).unwrap(),
                mod_bessel(ModBessel::K(1.5), z).unwrap(),
                mod_bessel(ModBessel::K(0.3), z).unwrap(),
                mod_bessel(ModBessel::K(7.25), z).unwrap(),
            ];
            for (i, (&g, &w)) in got.iter().zip(&row[1..]).enumerate() {
                assert!(rel(g, w) < 1e-12, "z={z} column {i}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn scaled_values_at_the_range_limit() {
        assert!(rel(bessel_i_scaled(0, 700.0).unwrap(), 0.015_081_295_651_531_358) < 1e-13);
        assert!(rel(bessel_k_scaled(1.0, 700.0).unwrap(), 0.047_396_187_653_494_544) < 1e-13);
        assert!(bessel_k_scaled(1.0, 5000.0).is_ok());
        assert!(matches!(bessel_k(1.0, 800.0), Err(SpecFunError::Range { .. })));
        assert!(matches!(bessel_i(0, 800.0), Err(SpecFunError::Range { .. })));
    }

    #[test]
    fn i0_at_small_argument() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert!((mod_bessel(ModBessel::I0, 1e-300).unwrap() - 1.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(mod_bessel(ModBessel::K0, 0.0).is_err());
        assert!(mod_bessel(ModBessel::I1, -1.0).is_err());
    }

    #[test]
    fn k0_small_argument_against_integral_representation() {
        // K0(z) = ∫_0^∞ exp(−z cosh t) dt
        let budget = AccuracyBudget::new(1e-13, 1e-15, 4000).unwrap();
        for z in [1e-3, 1e-2, 0.1] {
            let q = integrate(
                |t: f64| (-z * t.cosh()).exp(),
                IntegrationDomain::SemiInfinite { a: 0.0, tail: TailDecay::Exponential { rate: 1.0 } },
                &budget,
            )
            .unwrap();
            let k0 = bessel_k(0.0, z).unwrap();
            assert!(rel(k0, q.value) < 1e-11, "z={z}: {k0} vs {}", q.value);
            let leading = -(0.5 * z).ln() - EULER_GAMMA;
            assert!((k0 - leading).abs() < z * z * (1.0 - (0.5 * z).ln()));
        }
    }

    #[test]
    fn k1_large_argument_expansion() {
        // K_ν(z) ≈ √(π/2z) e^{−z}(1 + (4ν²−1)/(8z)); for ν=1 the gap is O(1/z²)
        for z in [20.0, 40.0, 80.0, 160.0] {
            let k1 = bessel_k_scaled(1.0, z).unwrap();
            let lead = (PI / (2.0 * z)).sqrt();
            let two_term = lead * (1.0 + 3.0 / (8.0 * z));
            let gap = (k1 / two_term - 1.0).abs();
            // next coefficient is −15/128
            assert!(gap < 0.15 / (z * z) && gap > 0.08 / (z * z), "z={z} gap={gap:e}");
        }
    }

    #[test]
    fn negative_order_is_symmetric() {
        assert_eq!(bessel_k(-2.5, 3.0).unwrap(), bessel_k(2.5, 3.0).unwrap());
    }
}
