use std::ops::{Add, Mul, Neg};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{serde_rational_vec, Rational};

/// Truncated formal series in `1/z` without nonnegative powers:
/// `coeffs[k]` multiplies `z^-(k+1)`. The order is the number of known
/// coefficients; nothing is claimed about the terms past it.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvZSeries {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl InvZSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        InvZSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        InvZSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    /// The expansion `-s0/z - s1/z^2 - ...` attached to a moment list.
    pub fn from_moments(moments: &[Rational]) -> Self {
        InvZSeries {
            coeffs: moments.iter().map(|s| -s).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        InvZSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    /// Componentwise sum; order is the smaller of the two.
    pub fn add(&self, rhs: &InvZSeries) -> InvZSeries {
        InvZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Product of two tails. `z^-(i+1) * z^-(j+1)` lands on index `i + j + 1`,
    /// so index 0 of the result is a structural zero. The order is the
    /// smaller of the two orders.
    pub fn mul(&self, rhs: &InvZSeries) -> InvZSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            for i in 0..k {
                let j = k - 1 - i;
                *slot += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        InvZSeries { coeffs }
    }
}

impl Add for &InvZSeries {
    type Output = InvZSeries;
    fn add(self, rhs: &InvZSeries) -> InvZSeries {
        InvZSeries::add(self, rhs)
    }
}

impl Mul for &InvZSeries {
    type Output = InvZSeries;
    fn mul(self, rhs: &InvZSeries) -> InvZSeries {
        InvZSeries::mul(self, rhs)
    }
}

impl Neg for &InvZSeries {
    type Output = InvZSeries;
    fn neg(self) -> InvZSeries {
        InvZSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
