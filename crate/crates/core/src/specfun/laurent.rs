use std::ops::{Add, Mul, Neg, Sub};

/// A quantity near s = 0 written as `finite + pole_residue / s`.
///
/// Regular quantities have `pole_residue == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct LaurentValue {
    pub finite: f64,
    pub pole_residue: f64,
}

impl LaurentValue {
    pub const fn new(finite: f64, pole_residue: f64) -> Self {
        Self { finite, pole_residue }
    }

    pub const fn regular(finite: f64) -> Self {
        Self { finite, pole_residue: 0.0 }
    }

    /// Product with a function regular at s = 0, given its value and first
    /// derivative there: (f + r/s)(g0 + g1 s) = (f g0 + r g1) + r g0 / s + O(s).
    pub fn times_regular(self, value: f64, derivative: f64) -> Self {
        Self { finite: self.finite * value + self.pole_residue * derivative, pole_residue: self.pole_residue * value }
    }

    /// Evaluate at a nonzero regulator value, dropping O(s) terms.
    pub fn at(self, s: f64) -> f64 {
        self.finite + self.pole_residue / s
    }

    pub fn is_finite(self) -> bool {
        self.finite.is_finite() && self.pole_residue.is_finite()
    }
}

impl Add for LaurentValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.finite + rhs.finite, self.pole_residue + rhs.pole_residue)
    }
}

impl Sub for LaurentValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.finite - rhs.finite, self.pole_residue - rhs.pole_residue)
    }
}

impl Neg for LaurentValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.finite, -self.pole_residue)
    }
}

impl Mul<f64> for LaurentValue {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.finite * rhs, self.pole_residue * rhs)
    }
}

impl std::iter::Sum for LaurentValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_with_regular_function() {
        // (γ + 1/s)(2 + 3s) = 2γ + 3 + 2/s
        let z = LaurentValue::new(0.5, 1.0).times_regular(2.0, 3.0);
        assert_eq!(z, LaurentValue::new(4.0, 2.0));
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = LaurentValue::new(1.0, 2.0);
        let b = LaurentValue::regular(0.25);
        assert_eq!(a + b, LaurentValue::new(1.25, 2.0));
        assert_eq!((a - b) * 2.0, LaurentValue::new(1.5, 4.0));
        assert_eq!(-a, LaurentValue::new(-1.0, -2.0));
        assert_eq!([a, b].into_iter().sum::<LaurentValue>(), a + b);
    }
}
