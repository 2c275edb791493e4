use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;
use super::series::InvZSeries;
use crate::error::{Error, Result};

/// `numer / denom` with a nonzero monic denominator. No gcd reduction is
/// done; equality is decided by cross-multiplication.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawRationalFunction")]
pub struct RationalFunction {
    numer: Poly,
    denom: Poly,
}

#[derive(Deserialize)]
struct RawRationalFunction {
    numer: Poly,
    denom: Poly,
}

impl TryFrom<RawRationalFunction> for RationalFunction {
    type Error = Error;
    fn try_from(raw: RawRationalFunction) -> Result<Self> {
        RationalFunction::new(raw.numer, raw.denom)
    }
}

impl RationalFunction {
    pub fn new(numer: Poly, denom: Poly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let lead = denom.leading().cloned().expect("nonzero");
        if lead == Rational::from_integer(1.into()) {
            return Ok(RationalFunction { numer, denom });
        }
        Ok(RationalFunction {
            numer: numer.scale(&lead.recip()),
            denom: denom.scale(&lead.recip()),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// Vanishes at infinity: `deg numer < deg denom` (the zero function
    /// counts as proper).
    pub fn is_proper(&self) -> bool {
        match (self.numer.degree(), self.denom.degree()) {
            (None, _) => true,
            (Some(n), Some(d)) => n < d,
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            numer: &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            denom: &self.denom * &rhs.denom,
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.numer.eval(x) / d)
    }

    /// Coefficients `c_0..c_{order-1}` of `f(z) = sum c_k z^-(k+1)`.
    ///
    /// With `w = 1/z` and `d = deg denom`, `f = w^d numer(1/w) / w^d denom(1/w)`;
    /// the reversed denominator has constant term `lead(denom) != 0`, so this
    /// is an ordinary power-series division in `w`.
    pub fn series(&self, order: usize) -> Result<InvZSeries> {
        let d = self.denom.degree().ok_or(Error::ZeroDenominator)?;
        if let Some(n) = self.numer.degree() {
            if n >= d {
                return Err(Error::Improper { numer: n, denom: d });
            }
        }
        // rev_den[i] = coefficient of w^i in w^d denom(1/w)
        let rev_den: Vec<Rational> = (0..=d).map(|i| self.denom.coeff(d - i)).collect();
        // rev_num[i] = coefficient of w^i in w^d numer(1/w); rev_num[0] = 0
        let rev_num = |i: usize| -> Rational {
            if i == 0 || i > d {
                Rational::zero()
            } else {
                self.numer.coeff(d - i)
            }
        };
        let lead = &rev_den[0];
        // h[i] = coefficient of w^i in the quotient, h[0] = 0.
        let mut h = vec![Rational::zero(); order + 1];
        for i in 1..=order {
            let mut acc = rev_num(i);
            for (k, dk) in rev_den.iter().enumerate().skip(1).take(i) {
                acc -= dk * &h[i - k];
            }
            h[i] = acc / lead;
        }
        Ok(InvZSeries::new(h.into_iter().skip(1).collect()))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numer * &other.denom == &other.numer * &self.denom
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numer, self.denom)
    }
}
