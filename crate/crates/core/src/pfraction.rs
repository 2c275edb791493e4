//! One-dimensional step-by-step (Schur) algorithm.
//!
//! A moment sequence `s` is peeled one normal index at a time into atoms
//! `(a_j, b_j)` of the P-fraction
//!
//! ```text
//! f(z) = -b_0 / (a_0(z) - b_1 / (a_1(z) - ... - b_{N-1} / (a_{N-1}(z) + tau(z))))
//! ```
//!
//! whose expansion at infinity reproduces `-s_0/z - s_1/z^2 - ...`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::serde_rational;
use crate::arith::{Poly, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::hankel::{hankel_determinant, MomentSequence, NormalIndices};
use crate::linalg::determinant;

/// One partial denominator `a_j` with its numerator `b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAtom {
    pub a: Poly,
    #[serde(with = "serde_rational")]
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFraction {
    atoms: Vec<PAtom>,
    indices: NormalIndices,
    source_length: usize,
    covered: usize,
    open_tail: bool,
}

impl PFraction {
    pub fn atoms(&self) -> &[PAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Normal indices `n_1 < ... < n_N` reached by the expansion.
    pub fn indices(&self) -> &NormalIndices {
        &self.indices
    }

    /// Number of moments in the input sequence.
    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// Number of moments `2 n_N` the atoms account for.
    pub fn covered(&self) -> usize {
        self.covered
    }

    /// True when the expansion consumed every input moment.
    pub fn is_complete(&self) -> bool {
        self.open_tail || self.covered == self.source_length
    }

    /// True when the input had odd length `2 n_N - 1`: the constant term of
    /// the last `a_{N-1}` is then not determined by the data.
    pub fn has_open_tail(&self) -> bool {
        self.open_tail
    }
}

/// Result of one Schur step on a sequence whose first normal index is `nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurStep {
    pub nu: usize,
    pub b: Rational,
    pub a: Poly,
    pub next: MomentSequence,
}

fn first_normal_index(s: &MomentSequence) -> Option<usize> {
    (1..)
        .take_while(|&n| 2 * n - 2 < s.len())
        .find(|&n| !hankel_determinant(s, n).expect("range checked").is_zero())
}

/// One step of the algorithm.
///
/// With `nu` the first normal index of `s`:
/// * `b = s_{nu-1}`;
/// * `a` is the monic degree-`nu` polynomial `det(bordered Hankel) / D_nu`,
///   the last row of the bordered matrix being `(1, z, ..., z^nu)`;
/// * the transformed moments are
///   `s'_i = (-1)^(i+nu) / b^(nu+i+1) * det T_{nu+i+1}` where `T_m` is the
///   `m x m` lower-Hessenberg Toeplitz matrix with `s_{nu-1}` on the
///   superdiagonal, first row `(s_nu, s_{nu-1}, 0, ...)` and last row
///   `(s_{2nu+i}, ..., s_nu)`; `i` runs over `0..len - 2nu`.
pub fn schur_step(s: &MomentSequence) -> Result<SchurStep> {
    let nu = first_normal_index(s).ok_or(Error::NoNormalIndex)?;
    if 2 * nu > s.len() {
        return Err(Error::InsufficientMoments {
            needed: 2 * nu - 1,
            available: s.len(),
        });
    }
    let m = s.moments();
    let b = m[nu - 1].clone();
    assert!(!b.is_zero(), "leading moment at a normal index is nonzero");

    let d_nu = hankel_determinant(s, nu)?;
    let a_coeffs = (0..=nu)
        .map(|k| {
            let minor: Vec<Vec<Rational>> = (0..nu)
                .map(|i| {
                    (0..=nu)
                        .filter(|&c| c != k)
                        .map(|c| m[i + c].clone())
                        .collect()
                })
                .collect();
            let cofactor = determinant(&minor);
            let signed = if (nu + k) % 2 == 0 { cofactor } else { -cofactor };
            signed / &d_nu
        })
        .collect();
    let a = Poly::new(a_coeffs);
    debug_assert!(a.is_monic() && a.degree() == Some(nu));

    let g = |k: usize| m[nu - 1 + k].clone();
    let next = (0..s.len() - 2 * nu)
        .map(|i| {
            let size = nu + i + 1;
            let t: Vec<Vec<Rational>> = (0..size)
                .map(|r| {
                    (0..size)
                        .map(|c| if c <= r + 1 { g(r + 1 - c) } else { Rational::zero() })
                        .collect()
                })
                .collect();
            let det = determinant(&t);
            let value = det / num_traits::pow(b.clone(), size);
            if (i + nu) % 2 == 0 {
                value
            } else {
                -value
            }
        })
        .collect();

    Ok(SchurStep {
        nu,
        b,
        a,
        next: MomentSequence::new(next),
    })
}

/// Runs [`schur_step`] until the data is exhausted or the remaining
/// sequence has no usable normal index. Fails only when not even one step
/// is possible; a shorter expansion is reported through
/// [`PFraction::is_complete`].
pub fn pfraction_expand(s: &MomentSequence) -> Result<PFraction> {
    let mut atoms = Vec::new();
    let mut indices = Vec::new();
    let mut reached = 0;
    let mut cur = s.clone();
    while !cur.is_empty() {
        match schur_step(&cur) {
            Ok(step) => {
                reached += step.nu;
                indices.push(reached);
                atoms.push(PAtom {
                    a: step.a,
                    b: step.b,
                });
                cur = step.next;
            }
            Err(Error::NoNormalIndex | Error::InsufficientMoments { .. }) if !atoms.is_empty() => {
                break
            }
            Err(e) => return Err(e),
        }
    }
    if atoms.is_empty() {
        return Err(Error::NoNormalIndex);
    }
    Ok(PFraction {
        atoms,
        indices: NormalIndices::new(indices),
        source_length: s.len(),
        covered: 2 * reached,
        open_tail: false,
    })
}

/// Expansion of odd-length data `s_0..s_{2n-2}`.
///
/// The sequence is completed with `s_{2n-1} = 0` and expanded. That moment
/// only affects the constant term of the last `a_{N-1}`, so everything the
/// odd-data S-fraction consumes is independent of the completion; the
/// result is flagged with [`PFraction::has_open_tail`].
pub fn pfraction_expand_odd(s: &MomentSequence) -> Result<PFraction> {
    let mut moments = s.moments().to_vec();
    moments.push(Rational::zero());
    let mut pf = pfraction_expand(&MomentSequence::new(moments))?;
    pf.open_tail = pf.covered == s.len() + 1;
    pf.source_length = s.len();
    if pf.open_tail {
        pf.covered = s.len();
    }
    Ok(pf)
}

/// First- and second-kind polynomials `(P_{n_j}, Q_{n_j})` for `j = 0..=N`
/// from `y_{j+1} = a_j y_j - b_j y_{j-1}` with `P_{n_-1} = 0, P_{n_0} = 1,
/// Q_{n_-1} = -1, Q_{n_0} = 0`.
pub fn pq_polynomials(pf: &PFraction) -> Vec<(Poly, Poly)> {
    let mut out = Vec::with_capacity(pf.len() + 1);
    let (mut p_prev, mut p_cur) = (Poly::zero(), Poly::one());
    let (mut q_prev, mut q_cur) = (Poly::constant(-Rational::one()), Poly::zero());
    out.push((p_cur.clone(), q_cur.clone()));
    for atom in pf.atoms() {
        let p_next = &(&atom.a * &p_cur) - &p_prev.scale(&atom.b);
        let q_next = &(&atom.a * &q_cur) - &q_prev.scale(&atom.b);
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        out.push((p_cur.clone(), q_cur.clone()));
    }
    out
}

/// Asymptotic class of a tail parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailClass {
    /// `tau = o(1)`: vanishes at infinity.
    Vanishing,
    /// `1/tau = o(z)`: bounded away from zero at infinity.
    InverseSublinear,
}

impl fmt::Display for TailClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailClass::Vanishing => "tau = o(1)",
            TailClass::InverseSublinear => "1/tau = o(z)",
        })
    }
}

/// Free parameter closing a continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// `tau = 0`, terminates an o(1) slot.
    Zero,
    /// `1/tau = 0`, terminates a `1/tau = o(z)` slot.
    Infinite,
    Rational(RationalFunction),
}

impl Tail {
    pub fn class(&self) -> TailClass {
        match self {
            Tail::Zero => TailClass::Vanishing,
            Tail::Infinite => TailClass::InverseSublinear,
            Tail::Rational(f) if f.is_proper() => TailClass::Vanishing,
            Tail::Rational(_) => TailClass::InverseSublinear,
        }
    }

    /// Fails with `tau-class` unless the tail has the expected class. A
    /// rational tail that is identically zero only counts as [`Tail::Zero`].
    pub fn require(&self, expected: TailClass) -> Result<()> {
        if let Tail::Rational(f) = self {
            if expected == TailClass::InverseSublinear && f.numer().is_zero() {
                return Err(Error::TauClass("1/tau is undefined for tau = 0".into()));
            }
        }
        if self.class() != expected {
            return Err(Error::TauClass(format!("expected {expected}, got {}", self.class())));
        }
        Ok(())
    }

    /// `(u, v)` with `tau = u / v`; the designators map to `(0, 1)` and `(1, 0)`.
    pub fn as_fraction(&self) -> (Poly, Poly) {
        match self {
            Tail::Zero => (Poly::zero(), Poly::one()),
            Tail::Infinite => (Poly::one(), Poly::zero()),
            Tail::Rational(f) => (f.numer().clone(), f.denom().clone()),
        }
    }
}

/// Combines two consecutive polynomial pairs with a tail:
/// `(n_prev u + n_last v) / (d_prev u + d_last v)` where `tau = u/v`.
pub(crate) fn linear_fractional(
    numer: (&Poly, &Poly),
    denom: (&Poly, &Poly),
    tail: &Tail,
) -> Result<RationalFunction> {
    let (u, v) = tail.as_fraction();
    let n = &(numer.0 * &u) + &(numer.1 * &v);
    let d = &(denom.0 * &u) + &(denom.1 * &v);
    RationalFunction::new(n, d).map_err(|_| Error::Degenerate)
}

/// `f = -(Q_{n_{N-1}} tau + Q_{n_N}) / (P_{n_{N-1}} tau + P_{n_N})`, with
/// the denominator of `tau` cleared.
pub fn pfraction_solution(pf: &PFraction, tau: &Tail) -> Result<RationalFunction> {
    if pf.has_open_tail() {
        return Err(Error::UnsupportedParity {
            strategy: "pfraction",
            parity: "odd",
        });
    }
    tau.require(TailClass::Vanishing)?;
    let pq = pq_polynomials(pf);
    let n = pq.len() - 1;
    if n == 0 {
        return Ok(RationalFunction::zero());
    }
    let (p_prev, q_prev) = &pq[n - 1];
    let (p_last, q_last) = &pq[n];
    linear_fractional((q_prev, q_last), (p_prev, p_last), tau).map(|f| f.neg())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: usize,
    #[serde(with = "serde_rational")]
    pub expected: Rational,
    #[serde(with = "serde_rational")]
    pub got: Rational,
}

/// Coefficientwise comparison of a solution's expansion with `-s_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub order: usize,
    pub matched_through: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// Checks `f(z) = -s_0/z - ... - s_{order-1}/z^order + O(z^-(order+1))`.
pub fn verify_expansion(
    f: &RationalFunction,
    s: &MomentSequence,
    order: usize,
) -> Result<VerificationReport> {
    if order > s.len() {
        return Err(Error::InsufficientMoments {
            needed: order - 1,
            available: s.len(),
        });
    }
    let series = f.series(order)?;
    let mismatch = series
        .coeffs()
        .iter()
        .zip(s.moments())
        .enumerate()
        .find(|(_, (got, sk))| **got != -(*sk).clone())
        .map(|(index, (got, sk))| Mismatch {
            index,
            expected: -sk.clone(),
            got: got.clone(),
        });
    let matched_through = mismatch.as_ref().map_or(order, |m| m.index);
    Ok(VerificationReport {
        ok: mismatch.is_none(),
        order,
        matched_through,
        first_mismatch: mismatch,
    })
}
