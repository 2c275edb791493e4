//! Seeded generators and an independent Schur-step oracle shared by the
//! integration suites.
#![allow(dead_code)]

use momentfrac::arith::{int, rat};
use momentfrac::hankel::hankel_determinant;
use momentfrac::multidim::{Atom, AtomicMeasure};
use momentfrac::{MomentSequence, Poly, Rational, RationalFunction};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng, bound: i64, den_max: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=den_max))
}

pub fn random_sequence(rng: &mut impl Rng, len: usize) -> MomentSequence {
    MomentSequence::new((0..len).map(|_| small_rational(rng, 5, 3)).collect())
}

/// Even-length sequence with `D_1, ..., D_{len/2}` all nonzero.
pub fn all_normal_sequence(rng: &mut impl Rng, len: usize) -> MomentSequence {
    loop {
        let s = random_sequence(rng, len);
        if (1..=len / 2).all(|n| !hankel_determinant(&s, n).unwrap().is_zero()) {
            return s;
        }
    }
}

/// `per_len` sequences for each of the lengths 2, 4, 6, 8.
pub fn corpus(seed: u64, per_len: usize) -> Vec<MomentSequence> {
    let mut r = rng(seed);
    [2, 4, 6, 8]
        .iter()
        .flat_map(|&len| (0..per_len).map(|_| all_normal_sequence(&mut r, len)).collect::<Vec<_>>())
        .collect()
}

/// Random sequence whose leading zeros force normal-index gaps.
pub fn gapped_sequence(rng: &mut impl Rng, len: usize) -> MomentSequence {
    let mut v: Vec<Rational> = (0..len).map(|_| small_rational(rng, 4, 2)).collect();
    let zeros = rng.gen_range(0..len / 2);
    for x in v.iter_mut().take(zeros) {
        *x = Rational::zero();
    }
    if v[zeros].is_zero() {
        v[zeros] = int(1);
    }
    MomentSequence::new(v)
}

/// Proper rational function with a monic denominator of degree 1..=3.
pub fn random_proper(rng: &mut impl Rng) -> RationalFunction {
    let d = rng.gen_range(1..=3);
    let mut den: Vec<Rational> = (0..d).map(|_| small_rational(rng, 3, 2)).collect();
    den.push(int(1));
    let num: Vec<Rational> = (0..rng.gen_range(0..=d)).map(|_| small_rational(rng, 3, 2)).collect();
    RationalFunction::new(Poly::new(num), Poly::new(den)).unwrap()
}

/// `(point, mass)` pairs with distinct rational points and positive masses.
pub fn random_atoms_1d(rng: &mut impl Rng, k: usize) -> Vec<(Rational, Rational)> {
    let mut pts: Vec<Rational> = Vec::new();
    while pts.len() < k {
        let x = small_rational(rng, 6, 3);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.into_iter()
        .map(|x| (x, rat(rng.gen_range(1..=5), rng.gen_range(1..=3))))
        .collect()
}

pub fn moments_1d(atoms: &[(Rational, Rational)], len: usize) -> MomentSequence {
    MomentSequence::new(
        (0..len)
            .map(|k| atoms.iter().map(|(x, m)| m * num_traits::pow(x.clone(), k)).sum())
            .collect(),
    )
}

/// Atoms with integer coordinates in `-2..=3`.
pub fn random_measure(rng: &mut impl Rng, dim: usize, max_atoms: usize) -> AtomicMeasure {
    let grid: Vec<Vec<i64>> = (0..6i64.pow(dim as u32))
        .map(|mut k| {
            (0..dim)
                .map(|_| {
                    let c = k % 6 - 2;
                    k /= 6;
                    c
                })
                .collect()
        })
        .collect();
    let k = rng.gen_range(1..=max_atoms);
    let atoms = grid
        .choose_multiple(rng, k)
        .map(|p| Atom {
            point: p.iter().map(|&c| int(c)).collect(),
            mass: rat(rng.gen_range(1..=4), rng.gen_range(1..=2)),
        })
        .collect();
    AtomicMeasure::new(dim, atoms).unwrap()
}

/// One Schur step computed from the Laurent expansion alone.
///
/// With `f_0 = -sum s_k z^-(k+1)` and `r` the first nonzero moment,
/// `-s_r / f_0 = s_r z^(r+1) / g(1/z)` where `g(w) = sum_k s_{r+k} w^k`.
/// Inverting `g` as a power series gives the polynomial part `a` and the
/// remainder `-sum s'_i z^-(i+1)`.
pub struct SeriesStep {
    pub nu: usize,
    pub b: Rational,
    pub a: Poly,
    pub next: Vec<Rational>,
}

pub fn schur_by_series(s: &[Rational]) -> Option<SeriesStep> {
    let r = s.iter().position(|x| !x.is_zero())?;
    let nu = r + 1;
    if s.len() < 2 * nu {
        return None;
    }
    let g = &s[r..];
    let mut h: Vec<Rational> = vec![g[0].recip()];
    for k in 1..g.len() {
        let acc: Rational = (1..=k).map(|i| &g[i] * &h[k - i]).sum();
        h.push(-acc / &g[0]);
    }
    let b = s[r].clone();
    let a = Poly::new((0..=nu).map(|deg| &b * &h[nu - deg]).collect());
    let next = (0..s.len() - 2 * nu).map(|i| -(&b * &h[nu + i + 1])).collect();
    Some(SeriesStep { nu, b, a, next })
}

/// Full expansion by repeated [`schur_by_series`].
pub fn expand_by_series(s: &[Rational]) -> Vec<SeriesStep> {
    let mut out = Vec::new();
    let mut cur = s.to_vec();
    while let Some(step) = schur_by_series(&cur) {
        cur = step.next.clone();
        out.push(step);
        if cur.is_empty() {
            break;
        }
    }
    out
}

/// `sum_k -m_k / (z - x_k)` as one fraction.
pub fn atomic_transform(atoms: &[(Rational, Rational)]) -> RationalFunction {
    atoms.iter().fold(RationalFunction::zero(), |acc, (x, m)| {
        let term = RationalFunction::new(Poly::constant(-m.clone()), Poly::linear_factor(x)).unwrap();
        acc.add(&term)
    })
}
