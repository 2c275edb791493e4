//! S-fractions derived from a P-fraction, optionally after the shift
//! `z -> z - alpha`.
//!
//! Atoms `(m_j, l_j)` drive the two-term system
//!
//! ```text
//! y_{2j}   = y_{2j-2} + l_j y_{2j-1}
//! y_{2j+1} = y_{2j-1} - (z - alpha) m_{j+1}(z) y_{2j}
//! ```
//!
//! whose solutions `P+_k`, `Q+_k` are the Stieltjes polynomials.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{serde_rational, serde_rational_opt};
use crate::arith::{Poly, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::pfraction::{linear_fractional, pq_polynomials, PFraction, Tail, TailClass};

/// Parity of the number of moments: `s_0..s_{2n-1}` is even data,
/// `s_0..s_{2n-2}` is odd data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    /// Parity of a sequence with `len` moments.
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SAtom {
    pub m: Poly,
    /// Absent for the last atom of odd data, where the data does not fix it.
    #[serde(with = "serde_rational_opt")]
    pub l: Option<Rational>,
    /// Leading coefficient of `m`.
    #[serde(with = "serde_rational")]
    pub d: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SFraction {
    #[serde(with = "serde_rational")]
    alpha: Rational,
    atoms: Vec<SAtom>,
    source: PFraction,
}

impl SFraction {
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn atoms(&self) -> &[SAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn source(&self) -> &PFraction {
        &self.source
    }

    /// True when the last `l_N` is undetermined (odd data).
    pub fn has_open_tail(&self) -> bool {
        self.atoms.last().is_some_and(|a| a.l.is_none())
    }
}

/// Atoms of the S-fraction with shift `alpha`:
///
/// ```text
/// d_1 = 1/b_0                      l_1 = -1 / (d_1 a_0(alpha))
/// d_j = 1/(b_{j-1} l_{j-1}^2 d_{j-1})
/// l_j = -l_{j-1} / (1 + l_{j-1} d_j a_{j-1}(alpha))
/// m_j = d_j (a_{j-1}(z) - a_{j-1}(alpha)) / (z - alpha)
/// ```
///
/// A vanishing denominator means the sequence is not alpha-regular.
pub fn s_atoms(pf: &PFraction, alpha: &Rational) -> Result<SFraction> {
    if pf.is_empty() {
        return Err(Error::NoNormalIndex);
    }
    let singular = |step: usize| Error::AlphaSingular {
        alpha: alpha.to_string(),
        step,
    };
    let n = pf.len();
    let mut atoms: Vec<SAtom> = Vec::with_capacity(n);
    for (j, patom) in pf.atoms().iter().enumerate() {
        let d = match atoms.last() {
            None => patom.b.recip(),
            Some(prev) => {
                let l_prev = prev.l.as_ref().expect("only the last l may be open");
                (&pf.atoms()[j].b * l_prev * l_prev * &prev.d).recip()
            }
        };
        let (quot, a_alpha) = patom.a.div_linear(alpha);
        let m = quot.scale(&d);
        debug_assert_eq!(m.leading(), Some(&d));

        let l = if j + 1 == n && pf.has_open_tail() {
            None
        } else {
            let l = match atoms.last() {
                None => {
                    let den = &d * &a_alpha;
                    if den.is_zero() {
                        return Err(singular(j + 1));
                    }
                    -den.recip()
                }
                Some(prev) => {
                    let l_prev = prev.l.as_ref().expect("only the last l may be open");
                    let den = Rational::one() + l_prev * &d * &a_alpha;
                    if den.is_zero() {
                        return Err(singular(j + 1));
                    }
                    -(l_prev / den)
                }
            };
            Some(l)
        };
        atoms.push(SAtom { m, l, d });
    }
    Ok(SFraction {
        alpha: alpha.clone(),
        atoms,
        source: pf.clone(),
    })
}

/// `(P+_k, Q+_k)` for `k = -1, 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StieltjesPolys {
    /// `pairs[k + 1]` holds index `k`.
    pairs: Vec<(Poly, Poly)>,
}

impl StieltjesPolys {
    fn start() -> Self {
        StieltjesPolys {
            pairs: vec![(Poly::zero(), Poly::one()), (Poly::one(), Poly::zero())],
        }
    }

    /// Pair at index `k >= -1`.
    pub fn get(&self, k: isize) -> Option<(&Poly, &Poly)> {
        let i = usize::try_from(k + 1).ok()?;
        self.pairs.get(i).map(|(p, q)| (p, q))
    }

    pub fn p(&self, k: isize) -> &Poly {
        self.get(k).expect("index in range").0
    }

    pub fn q(&self, k: isize) -> &Poly {
        self.get(k).expect("index in range").1
    }

    /// Largest available index.
    pub fn max_index(&self) -> isize {
        self.pairs.len() as isize - 2
    }

    pub fn pairs(&self) -> &[(Poly, Poly)] {
        &self.pairs
    }
}

/// Stieltjes polynomials by the coupled recurrence, from
/// `P+_{-1} = 0, P+_0 = 1, Q+_{-1} = 1, Q+_0 = 0`. Stops at index `2N`, or
/// `2N - 1` when the last `l` is open.
pub fn stieltjes_polynomials_recurrence(sf: &SFraction) -> StieltjesPolys {
    let mut out = StieltjesPolys::start();
    let shift = Poly::linear_factor(&sf.alpha);
    for atom in &sf.atoms {
        let k = out.pairs.len();
        let (p2, q2) = out.pairs[k - 2].clone();
        let (p1, q1) = &out.pairs[k - 1];
        let factor = &shift * &atom.m;
        let odd = (&p2 - &(&factor * p1), &q2 - &(&factor * q1));
        out.pairs.push(odd);
        let Some(l) = &atom.l else { break };
        let k = out.pairs.len();
        let (p2, q2) = &out.pairs[k - 2];
        let (p1, q1) = &out.pairs[k - 1];
        let even = (p2 + &p1.scale(l), q2 + &q1.scale(l));
        out.pairs.push(even);
    }
    out
}

/// Stieltjes polynomials directly from the P-fraction polynomials:
///
/// ```text
/// P+_{2i}   =  P_{n_i}(z) / P_{n_i}(alpha)
/// Q+_{2i}   = -Q_{n_i}(z) / P_{n_i}(alpha)
/// P+_{2i-1} = -[P_{n_i}(z) P_{n_{i-1}}(alpha) - P_{n_{i-1}}(z) P_{n_i}(alpha)] / (b_0 ... b_{i-1})
/// Q+_{2i-1} =  [Q_{n_i}(z) P_{n_{i-1}}(alpha) - Q_{n_{i-1}}(z) P_{n_i}(alpha)] / (b_0 ... b_{i-1})
/// ```
///
/// With an open tail the last even entry is skipped, matching the
/// recurrence.
pub fn stieltjes_polynomials_determinant(pf: &PFraction, alpha: &Rational) -> Result<StieltjesPolys> {
    let pq = pq_polynomials(pf);
    let values: Vec<Rational> = pq.iter().map(|(p, _)| p.eval(alpha)).collect();
    let mut out = StieltjesPolys::start();
    let mut bprod = Rational::one();
    for i in 1..pq.len() {
        bprod *= &pf.atoms()[i - 1].b;
        let (p_cur, q_cur) = &pq[i];
        let (p_prev, q_prev) = &pq[i - 1];
        let p_odd = (&p_cur.scale(&values[i - 1]) - &p_prev.scale(&values[i])).scale(&-bprod.recip());
        let q_odd = (&q_cur.scale(&values[i - 1]) - &q_prev.scale(&values[i])).scale(&bprod.recip());
        out.pairs.push((p_odd, q_odd));
        if i + 1 == pq.len() && pf.has_open_tail() {
            break;
        }
        if values[i].is_zero() {
            return Err(Error::AlphaSingular {
                alpha: alpha.to_string(),
                step: i,
            });
        }
        let inv = values[i].recip();
        out.pairs.push((p_cur.scale(&inv), q_cur.scale(&-inv)));
    }
    Ok(out)
}

/// Solution of the interpolation problem from an S-fraction.
///
/// * even data (`2n_N` moments), `tau = o(1)`:
///   `(Q+_{2N-1} tau + Q+_{2N}) / (P+_{2N-1} tau + P+_{2N})`;
/// * odd data (`2n_N - 1` moments), `1/tau = o(z)`:
///   `(Q+_{2N-1} tau + Q+_{2N-2}) / (P+_{2N-1} tau + P+_{2N-2})`.
pub fn sfraction_solution(sf: &SFraction, parity: Parity, tau: &Tail) -> Result<RationalFunction> {
    let polys = stieltjes_polynomials_recurrence(sf);
    let n = sf.len() as isize;
    match parity {
        Parity::Even => {
            if sf.has_open_tail() {
                let have = sf.source.source_length();
                return Err(Error::InsufficientMoments {
                    needed: have,
                    available: have,
                });
            }
            tau.require(TailClass::Vanishing)?;
            linear_fractional(
                (polys.q(2 * n - 1), polys.q(2 * n)),
                (polys.p(2 * n - 1), polys.p(2 * n)),
                tau,
            )
        }
        Parity::Odd => {
            tau.require(TailClass::InverseSublinear)?;
            linear_fractional(
                (polys.q(2 * n - 1), polys.q(2 * n - 2)),
                (polys.p(2 * n - 1), polys.p(2 * n - 2)),
                tau,
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSums {
    /// Number of atoms summed.
    pub terms: usize,
    /// `sum m_j(alpha)`, the constant term of `m_j` in the shifted frame.
    #[serde(with = "serde_rational")]
    pub m_sum: Rational,
    /// Sum of the determined `l_j`.
    #[serde(with = "serde_rational")]
    pub l_sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminacyReport {
    pub depth: usize,
    #[serde(with = "serde_rational")]
    pub m_sum: Rational,
    #[serde(with = "serde_rational")]
    pub l_sum: Rational,
    pub per_sequence: Vec<PartialSums>,
}

/// Finite partial sums of `m_j(alpha)` and `l_j` over the first `depth`
/// atoms of each S-fraction. Shorter fractions contribute all their atoms.
/// Nothing is concluded about the infinite sums.
pub fn indeterminacy_partial_sums(sfs: &[SFraction], depth: usize) -> IndeterminacyReport {
    let per_sequence: Vec<PartialSums> = sfs
        .iter()
        .map(|sf| {
            let taken = &sf.atoms[..depth.min(sf.len())];
            PartialSums {
                terms: taken.len(),
                m_sum: taken.iter().map(|a| a.m.eval(&sf.alpha)).sum(),
                l_sum: taken.iter().filter_map(|a| a.l.clone()).sum(),
            }
        })
        .collect();
    IndeterminacyReport {
        depth,
        m_sum: per_sequence.iter().map(|p| p.m_sum.clone()).sum(),
        l_sum: per_sequence.iter().map(|p| p.l_sum.clone()).sum(),
        per_sequence,
    }
}
