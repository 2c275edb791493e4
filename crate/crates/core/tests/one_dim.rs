mod common;

use common::*;
use momentfrac::arith::{int, rat};
use momentfrac::hankel::{find_alpha, is_regular, normal_indices, MomentSequence};
use momentfrac::multidim::{solve_sequence, Strategy};
use momentfrac::pfraction::{
    pfraction_expand, pfraction_expand_odd, pfraction_solution, pq_polynomials, schur_step,
    verify_expansion, Tail,
};
use momentfrac::sfraction::{
    s_atoms, sfraction_solution, stieltjes_polynomials_determinant, stieltjes_polynomials_recurrence,
    Parity,
};
use momentfrac::{Poly, Rational};
use num_traits::Zero;
use rand::Rng;

fn closed_p_values(s: &MomentSequence, odd: bool) -> Vec<Poly> {
    let pf = if odd { pfraction_expand_odd(s) } else { pfraction_expand(s) }.unwrap();
    let pq = pq_polynomials(&pf);
    let keep = if odd { pf.len() - 1 } else { pf.len() };
    pq[1..=keep].iter().map(|(p, _)| p.clone()).collect()
}

#[test]
fn schur_step_matches_series_inversion() {
    let mut r = rng(11);
    let mut seqs = corpus(1, 15);
    seqs.extend((0..40).map(|_| {
        let len = 2 * r.gen_range(1..=4);
        gapped_sequence(&mut r, len)
    }));
    for s in &seqs {
        let mut cur = s.clone();
        while !cur.is_empty() {
            let Some(oracle) = schur_by_series(cur.moments()) else { break };
            let step = schur_step(&cur).unwrap();
            assert_eq!(step.nu, oracle.nu, "{s:?}");
            assert_eq!(step.b, oracle.b);
            assert_eq!(step.a, oracle.a);
            assert_eq!(step.next.moments(), oracle.next.as_slice());
            cur = step.next;
        }
    }
}

#[test]
fn expansion_reconstructs_with_gaps() {
    let mut r = rng(12);
    for _ in 0..60 {
        let len = 2 * r.gen_range(1..=4);
        let s = gapped_sequence(&mut r, len);
        let pf = pfraction_expand(&s).unwrap();
        // reached normal indices are exactly the normal indices of the data
        // up to the last one reached
        let last = pf.indices().last().unwrap();
        assert_eq!(pf.indices(), &normal_indices(&s).up_to(last));
        let f = pfraction_solution(&pf, &Tail::Zero).unwrap();
        let rep = verify_expansion(&f, &s, pf.covered()).unwrap();
        assert!(rep.ok, "{s:?}: {rep:?}");
    }
}

#[test]
fn proper_tails_keep_the_moments() {
    let mut r = rng(13);
    for s in corpus(2, 5) {
        let pf = pfraction_expand(&s).unwrap();
        for _ in 0..4 {
            let tau = Tail::Rational(random_proper(&mut r));
            let f = pfraction_solution(&pf, &tau).unwrap();
            assert!(verify_expansion(&f, &s, s.len()).unwrap().ok);
        }
    }
}

#[test]
fn cross_formula_on_regular_and_shifted() {
    let mut r = rng(14);
    let mut regular = 0;
    let mut shifted = 0;
    while regular < 40 || shifted < 25 {
        let len = r.gen_range(2..=8);
        let mut s = random_sequence(&mut r, len);
        if r.gen_bool(0.5) && len > 2 {
            let mut v = s.moments().to_vec();
            v[1] = Rational::zero();
            s = MomentSequence::new(v);
        }
        let odd = len % 2 == 1;
        let Ok(pf) = (if odd { pfraction_expand_odd(&s) } else { pfraction_expand(&s) }) else { continue };
        if !pf.is_complete() {
            continue;
        }
        let alpha = find_alpha(&closed_p_values(&s, odd));
        let sf = s_atoms(&pf, &alpha).unwrap();
        let rec = stieltjes_polynomials_recurrence(&sf);
        let det = stieltjes_polynomials_determinant(&pf, &alpha).unwrap();
        assert_eq!(rec, det, "{s:?} alpha {alpha}");
        if alpha.is_zero() {
            regular += 1;
        } else {
            shifted += 1;
        }
    }
}

#[test]
fn regular_means_zero_is_admissible() {
    let mut r = rng(15);
    for _ in 0..80 {
        let len = 2 * r.gen_range(1..=4);
        let s = all_normal_sequence(&mut r, len);
        let reg = is_regular(&s, &normal_indices(&s)).unwrap();
        let zero_ok = closed_p_values(&s, false).iter().all(|p| !p.eval(&int(0)).is_zero());
        assert_eq!(reg.regular, zero_ok, "{s:?}");
    }
}

#[test]
fn s_and_p_solutions_agree_on_even_data() {
    for s in corpus(3, 10) {
        let pf = pfraction_expand(&s).unwrap();
        let alpha = find_alpha(&closed_p_values(&s, false));
        let sf = s_atoms(&pf, &alpha).unwrap();
        let fs = sfraction_solution(&sf, Parity::Even, &Tail::Zero).unwrap();
        let fp = pfraction_solution(&pf, &Tail::Zero).unwrap();
        assert_eq!(fs, fp);
        for a in sf.atoms() {
            assert_eq!(a.m.leading(), Some(&a.d));
            assert!(!a.d.is_zero());
            assert!(a.l.as_ref().is_some_and(|l| !l.is_zero()));
        }
    }
}

#[test]
fn odd_data_reconstructs() {
    let mut r = rng(16);
    for s in corpus(4, 10) {
        let odd = s.truncated(s.len() - 1);
        let mut tails = vec![Tail::Infinite];
        tails.push(Tail::Rational(momentfrac::RationalFunction::new(
            Poly::new(vec![small_rational(&mut r, 3, 2), int(1)]),
            Poly::new(vec![int(2)]),
        ).unwrap()));
        for tau in tails {
            let Ok(sol) = solve_sequence(&odd, Strategy::SfractionAlpha, Parity::Odd, &tau, None) else {
                panic!("{odd:?}")
            };
            assert!(verify_expansion(&sol.solution, &odd, odd.len()).unwrap().ok, "{odd:?}");
        }
    }
}

#[test]
fn odd_outputs_ignore_the_completion_moment() {
    let mut r = rng(17);
    for s in corpus(5, 8) {
        let odd = s.truncated(s.len() - 1);
        let base = pfraction_expand_odd(&odd).unwrap();
        let alpha = find_alpha(&closed_p_values(&odd, true));
        let sf0 = s_atoms(&base, &alpha).unwrap();
        let mut v = odd.moments().to_vec();
        v.push(small_rational(&mut r, 5, 3));
        let other = pfraction_expand(&MomentSequence::new(v)).unwrap();
        let sf1 = s_atoms(&other, &alpha).unwrap();
        for (a, b) in sf0.atoms().iter().zip(sf1.atoms()) {
            assert_eq!((&a.m, &a.d), (&b.m, &b.d));
        }
        let n = sf0.len();
        assert_eq!(sf0.atoms()[..n - 1], sf1.atoms()[..n - 1]);
        let p0 = stieltjes_polynomials_recurrence(&sf0);
        let p1 = stieltjes_polynomials_recurrence(&sf1);
        assert_eq!(p0.pairs(), &p1.pairs()[..p0.pairs().len()]);
    }
}

#[test]
fn shift_matches_shifted_problem() {
    // moments of t - alpha: sum_i C(k, i) (-alpha)^(k-i) s_i
    fn shifted(s: &MomentSequence, alpha: &Rational) -> MomentSequence {
        let m = s.moments();
        MomentSequence::new(
            (0..m.len())
                .map(|k| {
                    let mut c = Rational::from_integer(1.into());
                    let mut acc = Rational::zero();
                    for i in (0..=k).rev() {
                        // c = C(k, i) (-alpha)^(k-i)
                        acc += &c * &m[i];
                        c = c * -alpha * Rational::from_integer(i.into())
                            / Rational::from_integer((k - i + 1).into());
                    }
                    acc
                })
                .collect(),
        )
    }
    let mut r = rng(18);
    let mut checked = 0;
    while checked < 40 {
        let len = 2 * r.gen_range(1..=3);
        let s = all_normal_sequence(&mut r, len);
        let alpha = rat(r.gen_range(-3..=3), r.gen_range(1..=2));
        let pf = pfraction_expand(&s).unwrap();
        let Ok(direct) = s_atoms(&pf, &alpha) else { continue };
        let t = shifted(&s, &alpha);
        let Ok(tpf) = pfraction_expand(&t) else { continue };
        let Ok(moved) = s_atoms(&tpf, &int(0)) else { continue };
        assert_eq!(direct.len(), moved.len());
        for (a, b) in direct.atoms().iter().zip(moved.atoms()) {
            assert_eq!(a.m.shift(&alpha), b.m);
            assert_eq!(a.l, b.l);
            assert_eq!(a.d, b.d);
        }
        checked += 1;
    }
}

#[test]
fn atomic_measures_terminate() {
    let mut r = rng(19);
    for _ in 0..30 {
        let k = r.gen_range(1..=4);
        let atoms = random_atoms_1d(&mut r, k);
        let s = moments_1d(&atoms, 2 * k);
        let pf = pfraction_expand(&s).unwrap();
        assert_eq!(pf.len(), k);
        assert_eq!(pfraction_solution(&pf, &Tail::Zero).unwrap(), atomic_transform(&atoms));
    }
}

#[test]
fn first_kind_polynomials_are_orthogonal() {
    // sum_k p_k s_{k+i} = 0 for i < deg P_{n_j}
    for s in corpus(6, 6) {
        let pf = pfraction_expand(&s).unwrap();
        for (j, (p, _)) in pq_polynomials(&pf).iter().enumerate().skip(1) {
            let n = pf.indices().as_slice()[j - 1];
            assert_eq!(p.degree(), Some(n));
            assert!(p.is_monic());
            for i in 0..n {
                let v: Rational = p.coeffs().iter().enumerate().map(|(k, c)| c * &s.moments()[k + i]).sum();
                assert!(v.is_zero());
            }
        }
    }
}
