//! Hankel determinants of moment sequences, normal indices, and the
//! regularity predicates that decide which continued fraction applies.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rational::serde_rational_vec, Poly, Rational};
use crate::error::{Error, Result};
use crate::linalg::determinant;

/// Finite list of moments `s_0, ..., s_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MomentSequence {
    #[serde(with = "serde_rational_vec")]
    moments: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(moments: Vec<Rational>) -> Self {
        MomentSequence { moments }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        MomentSequence::new(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.moments.get(i)
    }

    /// First `len` moments (or all of them if fewer are present).
    pub fn truncated(&self, len: usize) -> MomentSequence {
        MomentSequence::new(self.moments.iter().take(len).cloned().collect())
    }

    fn require(&self, needed: usize) -> Result<()> {
        if needed >= self.len() {
            return Err(Error::InsufficientMoments {
                needed,
                available: self.len(),
            });
        }
        Ok(())
    }

    fn hankel_matrix(&self, n: usize, offset: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|k| self.moments[i + k + offset].clone()).collect())
            .collect()
    }
}

impl From<Vec<Rational>> for MomentSequence {
    fn from(moments: Vec<Rational>) -> Self {
        MomentSequence::new(moments)
    }
}

/// `D_n = det(s_{i+k})_{i,k<n}`, with `D_0 = 1`.
pub fn hankel_determinant(s: &MomentSequence, n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    s.require(2 * n - 2)?;
    Ok(determinant(&s.hankel_matrix(n, 0)))
}

/// `D+_n = det(s_{i+k+1})_{i,k<n}`, with `D+_0 = 1`.
pub fn shifted_hankel_determinant(s: &MomentSequence, n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    s.require(2 * n - 1)?;
    Ok(determinant(&s.hankel_matrix(n, 1)))
}

/// Strictly increasing list of normal indices `n_1 < ... < n_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalIndices(Vec<usize>);

impl NormalIndices {
    pub fn new(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.first().is_none_or(|&n| n > 0));
        NormalIndices(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    /// Indices not exceeding `bound`.
    pub fn up_to(&self, bound: usize) -> NormalIndices {
        NormalIndices(self.0.iter().copied().filter(|&n| n <= bound).collect())
    }
}

/// All `n >= 1` with `2n - 2 <= l` and `D_n != 0`, ascending.
pub fn normal_indices(s: &MomentSequence) -> NormalIndices {
    let indices = (1..)
        .take_while(|&n| 2 * n - 2 < s.len())
        .filter(|&n| {
            !hankel_determinant(s, n)
                .expect("index range checked")
                .is_zero()
        })
        .collect();
    NormalIndices(indices)
}

/// Outcome of a regularity test; `witness` is the first normal index at
/// which the condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    pub witness: Option<usize>,
}

/// A sequence is regular when `D+_{n_j} != 0` for every normal index `n_j`.
pub fn is_regular(s: &MomentSequence, idx: &NormalIndices) -> Result<Regularity> {
    for &n in idx.as_slice() {
        if shifted_hankel_determinant(s, n)?.is_zero() {
            return Ok(Regularity {
                regular: false,
                witness: Some(n),
            });
        }
    }
    Ok(Regularity {
        regular: true,
        witness: None,
    })
}

/// `P(alpha) != 0` for every given first-kind polynomial.
pub fn is_alpha_regular(polys: &[Poly], alpha: &Rational) -> bool {
    polys.iter().all(|p| !p.eval(alpha).is_zero())
}

/// Candidate shifts `0, 1, -1, 2, -2, ...`.
pub fn alpha_ladder() -> impl Iterator<Item = Rational> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![int(0)]
        } else {
            vec![int(k), int(-k)]
        }
    })
}

/// First ladder value at which no polynomial vanishes. Terminates because
/// each nonzero polynomial has finitely many roots; an empty list yields 0.
pub fn find_alpha(polys: &[Poly]) -> Rational {
    debug_assert!(polys.iter().all(|p| !p.is_zero()));
    alpha_ladder()
        .find(|a| is_alpha_regular(polys, a))
        .expect("ladder is infinite")
}
