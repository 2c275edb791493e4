//! Moments in several variables.
//!
//! A tensor `s_{i_1..i_n}` (all components `<= ell`) splits into one
//! sequence per `(j_2, ..., j_n)`,
//!
//! ```text
//! t_i = multinomial(i + j_2 + ... + j_n; i, j_2, ..., j_n) * s_{i, j_2, ..., j_n}
//! ```
//!
//! and the associated function is assembled as
//!
//! ```text
//! F(z_1, ..., z_n) = sum_j  z_2^-(j_2+1) ... z_n^-(j_n+1) * f_j(z_1)
//! ```
//!
//! where `f_j(z_1) = -t_0/z_1 - t_1/z_1^2 - ...` solves the branch problem.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{serde_rational, serde_rational_vec};
use crate::arith::{Poly, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::hankel::{find_alpha, hankel_determinant, is_regular, MomentSequence};
use crate::pfraction::{
    pfraction_expand, pfraction_expand_odd, pfraction_solution, pq_polynomials, verify_expansion,
    PFraction, Tail, VerificationReport,
};
use crate::sfraction::{
    s_atoms, sfraction_solution, stieltjes_polynomials_recurrence, Parity, SFraction,
};

/// Exponents `(i_1, ..., i_n)`.
pub type MultiIndex = Vec<usize>;

/// All indices of length `dim` with components `<= bound`, lexicographic.
pub fn lex_indices(dim: usize, bound: usize) -> impl Iterator<Item = MultiIndex> {
    let base = bound + 1;
    let total = base.checked_pow(dim as u32).expect("index space fits in usize");
    (0..total).map(move |mut k| {
        let mut idx = vec![0; dim];
        for slot in idx.iter_mut().rev() {
            *slot = k % base;
            k /= base;
        }
        idx
    })
}

/// Dense tensor of moments with every component in `0..=ell`, stored in
/// lexicographic index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TensorDoc", into = "TensorDoc")]
pub struct MultiMomentSequence {
    dim: usize,
    ell: usize,
    values: Vec<Rational>,
}

impl MultiMomentSequence {
    pub fn from_fn(dim: usize, ell: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let values = lex_indices(dim, ell).map(|idx| f(&idx)).collect();
        MultiMomentSequence { dim, ell, values }
    }

    pub fn zeros(dim: usize, ell: usize) -> Self {
        MultiMomentSequence::from_fn(dim, ell, |_| Rational::zero())
    }

    /// One-variable tensor holding `s`; `s` must be nonempty.
    pub fn from_sequence(s: &MomentSequence) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Schema("moment sequence is empty".into()));
        }
        Ok(MultiMomentSequence {
            dim: 1,
            ell: s.len() - 1,
            values: s.moments().to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    fn offset(&self, idx: &[usize]) -> Option<usize> {
        if idx.len() != self.dim || idx.iter().any(|&i| i > self.ell) {
            return None;
        }
        Some(idx.iter().fold(0, |acc, &i| acc * (self.ell + 1) + i))
    }

    pub fn get(&self, idx: &[usize]) -> Option<&Rational> {
        self.offset(idx).map(|k| &self.values[k])
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> Option<&mut Rational> {
        self.offset(idx).map(|k| &mut self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &Rational)> {
        lex_indices(self.dim, self.ell).zip(&self.values)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorEntry {
    index: Vec<usize>,
    #[serde(with = "serde_rational")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct TensorDoc {
    dim: usize,
    ell: usize,
    entries: Vec<TensorEntry>,
}

impl From<MultiMomentSequence> for TensorDoc {
    fn from(s: MultiMomentSequence) -> Self {
        let entries = lex_indices(s.dim, s.ell)
            .zip(s.values)
            .map(|(index, value)| TensorEntry { index, value })
            .collect();
        TensorDoc {
            dim: s.dim,
            ell: s.ell,
            entries,
        }
    }
}

impl TryFrom<TensorDoc> for MultiMomentSequence {
    type Error = Error;

    fn try_from(doc: TensorDoc) -> Result<Self> {
        if doc.dim == 0 {
            return Err(Error::Schema("dim must be at least 1".into()));
        }
        let size = (doc.ell + 1)
            .checked_pow(doc.dim as u32)
            .ok_or_else(|| Error::Schema("tensor too large".into()))?;
        let mut out = MultiMomentSequence {
            dim: doc.dim,
            ell: doc.ell,
            values: vec![Rational::zero(); size],
        };
        let mut seen = vec![false; size];
        for e in doc.entries {
            let k = out.offset(&e.index).ok_or_else(|| {
                Error::Schema(format!("index {:?} outside dim {} / ell {}", e.index, doc.dim, doc.ell))
            })?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Schema(format!("duplicate index {:?}", e.index)));
            }
            out.values[k] = e.value;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            let missing = lex_indices(doc.dim, doc.ell).nth(k).expect("k < size");
            return Err(Error::Schema(format!("missing index {missing:?}")));
        }
        Ok(out)
    }
}

/// `k! / (parts_1! ... parts_r!)`.
pub fn multinomial(k: usize, parts: &[usize]) -> Result<Rational> {
    let sum: usize = parts.iter().sum();
    if sum != k {
        return Err(Error::PartsSum { k, sum });
    }
    // product of binomials C(p_1 + ... + p_r, p_r), each exact
    let mut acc = BigInt::one();
    let mut running = 0usize;
    for &p in parts {
        for t in 1..=p {
            acc *= running + t;
            acc /= t;
        }
        running += p;
    }
    Ok(Rational::from_integer(acc))
}

/// Sequences `t^{(j)}_i`, `i = 0..=ell`, keyed by `j = (j_2, ..., j_n)`.
pub fn associated_sequences(s: &MultiMomentSequence) -> BTreeMap<MultiIndex, MomentSequence> {
    lex_indices(s.dim - 1, s.ell)
        .map(|j| {
            let rest: usize = j.iter().sum();
            let seq = (0..=s.ell)
                .map(|i| {
                    let mut idx = Vec::with_capacity(s.dim);
                    idx.push(i);
                    idx.extend(&j);
                    let w = multinomial(i + rest, &idx).expect("parts sum by construction");
                    w * s.get(&idx).expect("index in range")
                })
                .collect();
            (j, MomentSequence::new(seq))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub mass: Rational,
}

/// Finite sum of point masses with positive weights at distinct points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MeasureDoc")]
pub struct AtomicMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct MeasureDoc {
    dim: usize,
    atoms: Vec<Atom>,
}

impl TryFrom<MeasureDoc> for AtomicMeasure {
    type Error = Error;

    fn try_from(doc: MeasureDoc) -> Result<Self> {
        AtomicMeasure::new(doc.dim, doc.atoms)
    }
}

impl AtomicMeasure {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Schema("dim must be at least 1".into()));
        }
        let mut points = BTreeSet::new();
        for a in &atoms {
            if a.point.len() != dim {
                return Err(Error::Schema(format!("atom point has {} coordinates, expected {dim}", a.point.len())));
            }
            if a.mass <= Rational::zero() {
                return Err(Error::Schema(format!("atom mass {} is not positive", a.mass)));
            }
            if !points.insert(a.point.clone()) {
                return Err(Error::Schema("atom points must be distinct".into()));
            }
        }
        Ok(AtomicMeasure { dim, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

/// `s_i = sum_k m_k x_{k,1}^{i_1} ... x_{k,n}^{i_n}` for all `i <= ell`.
pub fn moments_from_atoms(mu: &AtomicMeasure, ell: usize) -> MultiMomentSequence {
    // powers[k][c][e] = x_{k,c}^e
    let powers: Vec<Vec<Vec<Rational>>> = mu
        .atoms
        .iter()
        .map(|a| {
            a.point
                .iter()
                .map(|x| {
                    std::iter::successors(Some(Rational::one()), |p| Some(p * x))
                        .take(ell + 1)
                        .collect()
                })
                .collect()
        })
        .collect();
    MultiMomentSequence::from_fn(mu.dim, ell, |idx| {
        mu.atoms
            .iter()
            .zip(&powers)
            .map(|(a, pw)| {
                idx.iter()
                    .enumerate()
                    .fold(a.mass.clone(), |acc, (c, &e)| acc * &pw[c][e])
            })
            .sum()
    })
}

/// `sum_k m_k / (1 - sum_i x_{k,i}/z_i)`.
pub fn direct_transform(mu: &AtomicMeasure, point: &[Rational]) -> Result<Rational> {
    check_point(mu.dim, point)?;
    if point.iter().any(Zero::is_zero) {
        return Err(Error::Pole);
    }
    mu.atoms.iter().try_fold(Rational::zero(), |acc, a| {
        let den = a
            .point
            .iter()
            .zip(point)
            .fold(Rational::one(), |d, (x, z)| d - x / z);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(acc + &a.mass / den)
    })
}

/// `F = -(z_1 ... z_n)^-1 * direct_transform`.
pub fn associated_f(mu: &AtomicMeasure, point: &[Rational]) -> Result<Rational> {
    let t = direct_transform(mu, point)?;
    let prod: Rational = point.iter().product();
    Ok(-t / prod)
}

fn check_point(dim: usize, point: &[Rational]) -> Result<()> {
    if point.len() != dim {
        return Err(Error::Schema(format!("point has {} coordinates, expected {dim}", point.len())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Pfraction,
    SfractionRegular,
    SfractionAlpha,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Pfraction => "pfraction",
            Strategy::SfractionRegular => "sfraction_regular",
            Strategy::SfractionAlpha => "sfraction_alpha",
        }
    }
}

/// The tail that makes the solution a plain polynomial ratio.
pub fn terminating_tail(parity: Parity) -> Tail {
    match parity {
        Parity::Even => Tail::Zero,
        Parity::Odd => Tail::Infinite,
    }
}

/// How each branch's free parameter is chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TauPolicy {
    #[default]
    Terminating,
    Uniform(Tail),
    /// Branches not listed get the terminating tail.
    PerBranch(BTreeMap<MultiIndex, Tail>),
}

impl TauPolicy {
    pub fn tail_for(&self, index: &[usize], parity: Parity) -> Tail {
        match self {
            TauPolicy::Terminating => terminating_tail(parity),
            TauPolicy::Uniform(t) => t.clone(),
            TauPolicy::PerBranch(m) => m.get(index).cloned().unwrap_or_else(|| terminating_tail(parity)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub parity: Parity,
    pub tau: TauPolicy,
    /// Use this common normal index instead of the largest valid one.
    pub common_index: Option<usize>,
    /// Largest `j_k` of the branches to solve; defaults to `2n - 1` (even)
    /// or `2n - 2` (odd).
    pub branch_bound: Option<usize>,
    /// Fixed shift for [`Strategy::SfractionAlpha`]; chosen per branch when absent.
    pub alpha: Option<Rational>,
}

impl SolveOptions {
    pub fn new(strategy: Strategy, parity: Parity) -> Self {
        SolveOptions {
            strategy,
            parity,
            tau: TauPolicy::Terminating,
            common_index: None,
            branch_bound: None,
            alpha: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fraction {
    Pfraction(PFraction),
    Sfraction(SFraction),
}

/// `f = (numer[0] tau + numer[1]) / (denom[0] tau + denom[1])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialPair {
    pub numer: [Poly; 2],
    pub denom: [Poly; 2],
}

/// One-variable solution together with the fraction it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvedSequence {
    pub fraction: Fraction,
    pub pair: PolynomialPair,
    pub tau: Tail,
    pub solution: RationalFunction,
}

/// Solves the one-variable problem for exactly the moments in `s`: `2n`
/// of them for even parity, `2n - 1` for odd.
pub fn solve_sequence(
    s: &MomentSequence,
    strategy: Strategy,
    parity: Parity,
    tau: &Tail,
    alpha: Option<&Rational>,
) -> Result<SolvedSequence> {
    let pf = match parity {
        Parity::Even => pfraction_expand(s)?,
        Parity::Odd => pfraction_expand_odd(s)?,
    };
    if !pf.is_complete() {
        return Err(Error::NoNormalIndex);
    }
    let closed = match parity {
        Parity::Even => pf.indices().clone(),
        Parity::Odd => pf.indices().up_to(pf.indices().last().unwrap_or(0).saturating_sub(1)),
    };
    let sf = match strategy {
        Strategy::Pfraction => {
            if parity == Parity::Odd {
                return Err(Error::UnsupportedParity {
                    strategy: strategy.as_str(),
                    parity: parity.as_str(),
                });
            }
            let solution = pfraction_solution(&pf, tau)?;
            let pq = pq_polynomials(&pf);
            let n = pq.len() - 1;
            let pair = PolynomialPair {
                numer: [-&pq[n - 1].1, -&pq[n].1],
                denom: [pq[n - 1].0.clone(), pq[n].0.clone()],
            };
            return Ok(SolvedSequence {
                fraction: Fraction::Pfraction(pf),
                pair,
                tau: tau.clone(),
                solution,
            });
        }
        Strategy::SfractionRegular => {
            let r = is_regular(s, &closed)?;
            if let Some(w) = r.witness {
                return Err(Error::NotRegular {
                    branch: Vec::new(),
                    witness: w,
                });
            }
            s_atoms(&pf, &Rational::zero())?
        }
        Strategy::SfractionAlpha => {
            let alpha = match alpha {
                Some(a) => a.clone(),
                None => {
                    let pq = pq_polynomials(&pf);
                    let polys: Vec<Poly> = pq[1..=closed.len()].iter().map(|(p, _)| p.clone()).collect();
                    find_alpha(&polys)
                }
            };
            s_atoms(&pf, &alpha)?
        }
    };
    let solution = sfraction_solution(&sf, parity, tau)?;
    let sp = stieltjes_polynomials_recurrence(&sf);
    let n = sf.len() as isize;
    let last = match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n - 2,
    };
    let pair = PolynomialPair {
        numer: [sp.q(2 * n - 1).clone(), sp.q(last).clone()],
        denom: [sp.p(2 * n - 1).clone(), sp.p(last).clone()],
    };
    Ok(SolvedSequence {
        fraction: Fraction::Sfraction(sf),
        pair,
        tau: tau.clone(),
        solution,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// `(j_2, ..., j_n)`.
    pub index: MultiIndex,
    /// Human-readable `1/(z_2^(j_2+1) ... z_n^(j_n+1))`.
    pub prefix: String,
    /// The moments this branch was solved for.
    pub sequence: MomentSequence,
    #[serde(flatten)]
    pub solved: SolvedSequence,
}

impl Branch {
    pub fn solution(&self) -> &RationalFunction {
        &self.solved.solution
    }
}

/// `1/(z2^a z3^b ...)`; `1` for the one-variable case.
pub fn prefix_string(index: &[usize]) -> String {
    if index.is_empty() {
        return "1".into();
    }
    let factors: Vec<String> = index
        .iter()
        .enumerate()
        .map(|(k, &j)| match j + 1 {
            1 => format!("z{}", k + 2),
            e => format!("z{}^{e}", k + 2),
        })
        .collect();
    format!("1/({})", factors.join(" "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiSolution {
    pub dim: usize,
    pub ell: usize,
    pub strategy: Strategy,
    pub parity: Parity,
    pub common_index: usize,
    pub branch_bound: usize,
    /// Lexicographic in `index`.
    pub branches: Vec<Branch>,
}

impl MultiSolution {
    pub fn branch(&self, index: &[usize]) -> Option<&Branch> {
        self.branches
            .binary_search_by(|b| b.index.as_slice().cmp(index))
            .ok()
            .map(|k| &self.branches[k])
    }

    pub fn branch_mut(&mut self, index: &[usize]) -> Option<&mut Branch> {
        self.branches
            .binary_search_by(|b| b.index.as_slice().cmp(index))
            .ok()
            .map(|k| &mut self.branches[k])
    }

    /// Moments per branch the solution accounts for: `2n` or `2n - 1`.
    pub fn order(&self) -> usize {
        data_len(self.common_index, self.parity)
    }
}

fn data_len(n: usize, parity: Parity) -> usize {
    match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n - 1,
    }
}

fn default_bound(n: usize, parity: Parity) -> usize {
    data_len(n, parity) - 1
}

/// Largest `n` whose data fits in `ell + 1` moments.
fn max_index(ell: usize, parity: Parity) -> usize {
    match parity {
        Parity::Even => ell.div_ceil(2),
        Parity::Odd => ell / 2 + 1,
    }
}

fn branch_range(
    assoc: &BTreeMap<MultiIndex, MomentSequence>,
    bound: usize,
) -> impl Iterator<Item = (&MultiIndex, &MomentSequence)> {
    assoc.iter().filter(move |(j, _)| j.iter().all(|&c| c <= bound))
}

fn is_common_index(assoc: &BTreeMap<MultiIndex, MomentSequence>, n: usize, bound: usize) -> bool {
    branch_range(assoc, bound).all(|(_, seq)| {
        hankel_determinant(seq, n).is_ok_and(|d| !d.is_zero())
    })
}

/// Solves every branch with the chosen one-variable solver.
pub fn solve_mp(s: &MultiMomentSequence, opts: &SolveOptions) -> Result<MultiSolution> {
    if opts.strategy == Strategy::Pfraction && opts.parity == Parity::Odd {
        return Err(Error::UnsupportedParity {
            strategy: opts.strategy.as_str(),
            parity: opts.parity.as_str(),
        });
    }
    let assoc = associated_sequences(s);
    let top = max_index(s.ell, opts.parity);
    let bound_for = |n: usize| opts.branch_bound.unwrap_or_else(|| default_bound(n, opts.parity));
    if let Some(b) = opts.branch_bound {
        if b > s.ell {
            return Err(Error::InsufficientMoments {
                needed: b,
                available: s.ell + 1,
            });
        }
    }
    let n = match opts.common_index {
        Some(n) if n >= 1 && n <= top && is_common_index(&assoc, n, bound_for(n)) => n,
        Some(_) => return Err(Error::NoCommonNormalIndex),
        None => (1..=top)
            .rev()
            .find(|&n| is_common_index(&assoc, n, bound_for(n)))
            .ok_or(Error::NoCommonNormalIndex)?,
    };
    let bound = bound_for(n);
    let len = data_len(n, opts.parity);

    let branches = branch_range(&assoc, bound)
        .map(|(j, seq)| {
            let seq = seq.truncated(len);
            let tau = opts.tau.tail_for(j, opts.parity);
            let solved = solve_sequence(&seq, opts.strategy, opts.parity, &tau, opts.alpha.as_ref())
                .map_err(|e| match e {
                    Error::NotRegular { witness, .. } => Error::NotRegular {
                        branch: j.clone(),
                        witness,
                    },
                    other => other,
                })?;
            Ok(Branch {
                index: j.clone(),
                prefix: prefix_string(j),
                sequence: seq,
                solved,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(MultiSolution {
        dim: s.dim,
        ell: s.ell,
        strategy: opts.strategy,
        parity: opts.parity,
        common_index: n,
        branch_bound: bound,
        branches,
    })
}

/// Serializable description of `F`: the solution plus the assembly rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub form: String,
    #[serde(flatten)]
    pub solution: MultiSolution,
}

pub const ASSEMBLY_FORM: &str = "F(z1,...,zn) = sum over branches of prefix(z2,...,zn) * solution(z1)";

pub fn assemble_report(sol: &MultiSolution) -> SolutionReport {
    SolutionReport {
        form: ASSEMBLY_FORM.into(),
        solution: sol.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCheck {
    pub index: MultiIndex,
    #[serde(flatten)]
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiVerification {
    pub ok: bool,
    pub order: usize,
    pub branches: Vec<BranchCheck>,
}

impl MultiVerification {
    /// First branch that fails, if any.
    pub fn first_failure(&self) -> Option<&BranchCheck> {
        self.branches.iter().find(|b| !b.report.ok)
    }
}

/// Checks each branch's expansion against the sequence recomputed from `s`.
/// Because the prefixes are distinct monomials this is the same as
/// matching the multivariate expansion coefficientwise.
pub fn verify_multidim(sol: &MultiSolution, s: &MultiMomentSequence) -> Result<MultiVerification> {
    if sol.dim != s.dim {
        return Err(Error::Schema(format!("solution has dim {}, moments have dim {}", sol.dim, s.dim)));
    }
    let order = sol.order();
    let assoc = associated_sequences(s);
    let branches = sol
        .branches
        .iter()
        .map(|b| {
            let seq = assoc.get(&b.index).ok_or_else(|| {
                Error::InsufficientMoments {
                    needed: b.index.iter().copied().max().unwrap_or(0),
                    available: s.ell + 1,
                }
            })?;
            Ok(BranchCheck {
                index: b.index.clone(),
                report: verify_expansion(b.solution(), seq, order)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiVerification {
        ok: branches.iter().all(|b| b.report.ok),
        order,
        branches,
    })
}

/// `sum_j prefix_j(z_2, ..., z_n) f_j(z_1)`.
pub fn evaluate_solution(sol: &MultiSolution, point: &[Rational]) -> Result<Rational> {
    check_point(sol.dim, point)?;
    if point[1..].iter().any(Zero::is_zero) {
        return Err(Error::Pole);
    }
    sol.branches.iter().try_fold(Rational::zero(), |acc, b| {
        let prefix = b
            .index
            .iter()
            .zip(&point[1..])
            .fold(Rational::one(), |p, (&j, z)| p / num_traits::pow(z.clone(), j + 1));
        Ok(acc + prefix * b.solution().eval(&point[0])?)
    })
}
