//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{AccuracyBudget, CompensatedSum, SpecFunError};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// How the integrand decays beyond the last panel of a semi-infinite domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDecay {
    /// f(y) ~ C y^{−exponent}, exponent > 1.
    Power { exponent: f64 },
    /// f(y) ~ C e^{−rate·y}, rate > 0.
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegrationDomain {
    Finite { a: f64, b: f64 },
    SemiInfinite { a: f64, tail: TailDecay },
}

/// Result of a quadrature with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: usize,
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then(other.a.total_cmp(&self.a))
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Interval, SpecFunError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    if !resk.is_finite() {
        return Err(SpecFunError::Domain { function: "integrate", arg: center });
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Interval { a, b, value: result, error: err })
}

/// Adaptive integration over a finite interval [a, b].
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    budget: &AccuracyBudget,
) -> Result<Quadrature, SpecFunError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(SpecFunError::Domain { function: "integrate", arg: if a.is_finite() { b } else { a } });
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error_bound: 0.0, evaluations: 0 });
    }
    let first = gk15(&f, a, b)?;
    let mut evaluations = 15;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while total_err > budget.tolerance_for(total) {
        if heap.len() >= budget.max_terms {
            return Err(SpecFunError::BudgetExhausted { estimate: total, error_bound: total_err });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // interval cannot be split further in floating point
            return Err(SpecFunError::BudgetExhausted { estimate: total, error_bound: total_err });
        }
        let left = gk15(&f, worst.a, mid)?;
        let right = gk15(&f, mid, worst.b)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum in position order so the value does not carry update drift
    let mut parts: Vec<Interval> = heap.into_vec();
    parts.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = parts.iter().map(|p| p.value).collect::<CompensatedSum>().value();
    let error_bound = parts.iter().map(|p| p.error).sum();
    Ok(Quadrature { value, error_bound, evaluations })
}

/// Adaptive integration over a finite or semi-infinite domain.
///
/// Semi-infinite domains are covered by panels of doubling width until the
/// tail estimate implied by the decay hint drops below the tolerance; that
/// estimate is added to the result and to the error bound.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    domain: IntegrationDomain,
    budget: &AccuracyBudget,
) -> Result<Quadrature, SpecFunError> {
    let (a, tail) = match domain {
        IntegrationDomain::Finite { a, b } => return integrate_finite(f, a, b, budget),
        IntegrationDomain::SemiInfinite { a, tail } => (a, tail),
    };
    if !a.is_finite() {
        return Err(SpecFunError::Domain { function: "integrate", arg: a });
    }
    match tail {
        TailDecay::Power { exponent } if !(exponent > 1.0) => {
            return Err(SpecFunError::Domain { function: "integrate", arg: exponent });
        }
        TailDecay::Exponential { rate } if !(rate > 0.0) => {
            return Err(SpecFunError::Domain { function: "integrate", arg: rate });
        }
        _ => {}
    }
    let mut width = a.abs().max(1.0);
    let mut lo = a;
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    let mut evaluations = 0;
    for _ in 0..200 {
        let hi = lo + width;
        let panel = integrate_finite(&f, lo, hi, budget).map_err(|e| match e {
            SpecFunError::BudgetExhausted { estimate, error_bound } => {
                SpecFunError::BudgetExhausted { estimate: sum.value() + estimate, error_bound: err + error_bound }
            }
            other => other,
        })?;
        sum.add(panel.value);
        err += panel.error_bound;
        evaluations += panel.evaluations + 1;
        let fb = f(hi);
        let tail_value = match tail {
            TailDecay::Power { exponent } => fb * hi / (exponent - 1.0),
            TailDecay::Exponential { rate } => fb / rate,
        };
        if !tail_value.is_finite() {
            return Err(SpecFunError::Domain { function: "integrate", arg: hi });
        }
        let tol = budget.tolerance_for(sum.value());
        if tail_value.abs() < 0.25 * tol {
            sum.add(tail_value);
            return Ok(Quadrature { value: sum.value(), error_bound: err + tail_value.abs(), evaluations });
        }
        lo = hi;
        width *= 2.0;
    }
    Err(SpecFunError::BudgetExhausted { estimate: sum.value(), error_bound: f64::INFINITY })
}
