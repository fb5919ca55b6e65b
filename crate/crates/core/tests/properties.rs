use std::collections::HashMap;

use fubini::cells::fixtures::{W32_COVERS, W43_COVERS, W43_LEVELS};
use fubini::cells::{cell_codimension, omega_cells, rank_function};
use fubini::fieldlab::{canonicalize, Fp, Matrix};
use fubini::polyring::{Monomial, MultiPoly};
use fubini::qseries::{factorial, q_binomial, q_int, q_stirling, rev_q, stirling2};
use fubini::quotient::{Quotient, RingSpec};
use fubini::schubert::{double_schubert, schubert_perm, schubert_word};
use fubini::symfunc::{partitions, schur_poly, Partition};
use fubini::words::{enumerate_all, enumerate_fubini, is_convex, Perm, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((1..=m).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

fn poly(n: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -6i64..=6), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e as Monomial, BigInt::from(c))))
    })
}

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        (1usize..=4).prop_flat_map(|n| (Just(n), 1..=n)).prop_map(|(n, k)| RingSpec::r(n, k).unwrap()),
        (2usize..=4)
            .prop_flat_map(|n| (Just(n), 1..=n))
            .prop_flat_map(|(n, k)| (Just(n), Just(k), 1..=k))
            .prop_map(|(n, k, s)| RingSpec::rs(n, k, s).unwrap()),
        (1usize..=3)
            .prop_flat_map(|n| (Just(n), 1..=2usize, 1..=n))
            .prop_map(|(n, k, r)| RingSpec::t(n, k, r).unwrap()),
    ]
}

fn fubini_word(max_n: usize) -> impl Strategy<Value = Word> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| prop::sample::select(enumerate_fubini(n, k).unwrap()))
}

/// Identify `y_j` with `x_j` in a polynomial in `x_1..x_m, y_1..y_m`.
fn diagonal(f: &MultiPoly) -> MultiPoly {
    let m = f.nvars() / 2;
    MultiPoly::from_terms(m, f.terms().map(|(e, c)| ((0..m).map(|i| e[i] + e[m + i]).collect(), c.clone())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_is_a_left_action(p in perm(4), q in perm(4), f in poly(4, 3)) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(f.act(&pq).unwrap(), f.act(&q).unwrap().act(&p).unwrap());
    }

    #[test]
    fn nil_coxeter_relations(f in poly(4, 4), i in 1usize..=3, j in 1usize..=3) {
        let d = |g: &MultiPoly, i: usize| g.divided_difference(i).unwrap();
        prop_assert!(d(&d(&f, i), i).is_zero());
        if i.abs_diff(j) >= 2 {
            prop_assert_eq!(d(&d(&f, i), j), d(&d(&f, j), i));
        }
        if i < 3 {
            prop_assert_eq!(d(&d(&d(&f, i), i + 1), i), d(&d(&d(&f, i + 1), i), i + 1));
        }
    }

    #[test]
    fn divided_differences_lower_schubert(w in perm(5), i in 1usize..=4) {
        let got = schubert_perm(&w).divided_difference(i).unwrap();
        if w.at(i) > w.at(i + 1) {
            prop_assert_eq!(got, schubert_perm(&w.swap_positions(i)));
        } else {
            prop_assert!(got.is_zero());
        }
    }

    #[test]
    fn schubert_polynomials_ignore_trailing_fixed_points(w in perm(4)) {
        prop_assert_eq!(schubert_perm(&w.extend(6)), schubert_perm(&w).extend_vars(6));
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(
        (spec, f, g) in ring().prop_flat_map(|spec| (Just(spec), poly(spec.n(), 4), poly(spec.n(), 4))),
        a in -3i64..=3,
    ) {
        let q = Quotient::shared(spec).unwrap();
        let nf = |h: &MultiPoly| q.normal_form(h).unwrap();
        let a = BigInt::from(a);
        prop_assert_eq!(nf(&(&f.scale(&a) + &g)), &nf(&f).scale(&a) + &nf(&g));
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        prop_assert!(nf(&f).terms().all(|(m, _)| q.basis_index(m).is_some()));
        prop_assert_eq!(nf(&(&f * &g)), nf(&(&nf(&f) * &nf(&g))));
    }

    #[test]
    fn generators_vanish_after_any_permutation(spec in ring(), seed in 0usize..720) {
        let n = spec.n();
        let perms = Perm::all(n);
        let p = &perms[seed % perms.len()];
        let q = Quotient::shared(spec).unwrap();
        for g in spec.generators() {
            prop_assert!(q.ideal_member(&g.act(p).unwrap()).unwrap(), "{} not in the ideal of {}", g, spec);
        }
    }

    #[test]
    fn schubert_expansion_reconstructs(f in poly(3, 3)) {
        let q = Quotient::shared(RingSpec::r(3, 2).unwrap()).unwrap();
        let e = q.schubert_expand(&f).unwrap();
        let mut sum = MultiPoly::zero(3);
        for (w, c) in &e.0 {
            sum = &sum + &q.normal_form(&schubert_word(w)).unwrap().scale(c);
        }
        prop_assert_eq!(sum, q.normal_form(&f).unwrap());
    }

    #[test]
    fn word_schubert_degree_matches_basis_degree(w in fubini_word(5)) {
        let q = Quotient::shared(RingSpec::r(w.n(), w.k()).unwrap()).unwrap();
        let s = q.normal_form(&schubert_word(&w)).unwrap();
        prop_assert!(!s.is_zero());
        prop_assert_eq!(s.homogeneous_degree(), schubert_word(&w).homogeneous_degree());
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(
        entries in prop::collection::vec(0u32..3, 12),
        lower in prop::collection::vec(0u32..3, 3),
        diag in prop::collection::vec(1u32..3, 4),
    ) {
        let p = 3;
        let rows: Vec<Vec<Fp>> = entries.chunks(4).map(|r| r.iter().map(|&v| Fp::new(v as i64, p)).collect()).collect();
        let m = Matrix::new(rows).unwrap();
        prop_assume!(m.check_in_m().is_ok());
        let (w, c) = canonicalize(&m).unwrap();
        prop_assert!(c.fits_pattern(&w));
        prop_assert_eq!(canonicalize(&c).unwrap(), (w.clone(), c.clone()));
        let f = |v: u32| Fp::new(v as i64, p);
        let u = vec![
            vec![f(1), f(0), f(0)],
            vec![f(lower[0]), f(1), f(0)],
            vec![f(lower[1]), f(lower[2]), f(1)],
        ];
        let t: Vec<Fp> = diag.iter().map(|&d| f(d)).collect();
        prop_assert_eq!(canonicalize(&m.act(&u, &t)).unwrap(), (w, c));
    }

    #[test]
    fn schur_polynomials_are_symmetric(size in 1usize..=5, pick in any::<prop::sample::Index>(), i in 1usize..=3) {
        let parts = partitions(size);
        let lambda = pick.get(&parts);
        let s = schur_poly(lambda, 4);
        prop_assert_eq!(s.swap_vars(i), s);
    }

    #[test]
    fn grassmannian_schubert_is_schur(mask in 1u32..63) {
        let (head, tail): (Vec<usize>, Vec<usize>) = (1..=6).partition(|&i| mask & (1 << (i - 1)) != 0);
        let r = head.len();
        let w = Perm::new(head.into_iter().chain(tail).collect()).unwrap();
        let lambda = Partition::new((1..=r).rev().map(|i| w.at(i) - i).collect()).unwrap();
        prop_assert_eq!(schubert_perm(&w), schur_poly(&lambda, r).extend_vars(6));
    }

    #[test]
    fn double_schubert_vanishes_on_the_diagonal(w in perm(4)) {
        let d = diagonal(&double_schubert(&w));
        if w.is_identity() {
            prop_assert_eq!(d, MultiPoly::one(4));
        } else {
            prop_assert!(d.is_zero());
        }
    }

    #[test]
    fn double_schubert_specializes_to_single(w in perm(4)) {
        let f = double_schubert(&w);
        let single = MultiPoly::from_terms(4, f.terms().filter(|(e, _)| e[4..].iter().all(|&x| x == 0)).map(|(e, c)| (e[..4].to_vec(), c.clone())));
        prop_assert_eq!(single, schubert_perm(&w));
    }

    #[test]
    fn q_binomial_is_palindromic(a in 0i64..9, b in 0i64..9) {
        prop_assume!(b <= a);
        let p = q_binomial(a, b);
        prop_assert_eq!(rev_q(&p, None).unwrap(), p.clone());
        prop_assert_eq!(p, q_binomial(a, a - b));
    }

    #[test]
    fn q_stirling_specializes(n in 1usize..9, k in 1usize..9) {
        prop_assume!(k <= n);
        prop_assert_eq!(q_stirling(n, k).eval_i64(1), stirling2(n, k));
        if n > 1 && k > 1 {
            let rec = &q_stirling(n - 1, k - 1)
                + &(&q_stirling(n - 1, k) * &q_int(k));
            prop_assert_eq!(q_stirling(n, k), rec);
        }
    }

    #[test]
    fn words_round_trip_through_json(w in fubini_word(6)) {
        let s = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(Word::parse(s.trim_matches('"'), Some(w.k())).unwrap(), w);
    }
}

#[test]
fn sum_of_squared_syt_counts_is_factorial() {
    for n in 1..=8 {
        let total: BigInt = partitions(n).iter().map(|l| l.num_syt().pow(2)).sum();
        assert_eq!(total, factorial(n), "n = {n}");
    }
}

#[test]
fn omega_cells_of_convex_words_partition_all_words() {
    for n in 1..=5 {
        for k in 1..=4 {
            let all = enumerate_all(n, k);
            let mut hits: HashMap<Word, usize> = HashMap::new();
            for w in all.iter().filter(|w| is_convex(w)) {
                for v in omega_cells(w).unwrap() {
                    *hits.entry(v).or_default() += 1;
                }
            }
            assert_eq!(hits.len(), all.len(), "(n,k) = ({n},{k})");
            assert!(hits.values().all(|&c| c == 1), "(n,k) = ({n},{k})");
        }
    }
}

#[test]
fn rank_order_is_a_partial_order_on_convex_words() {
    let convex: Vec<Word> = enumerate_all(4, 3).into_iter().filter(is_convex).collect();
    let ranks: Vec<_> = convex.iter().map(rank_function).collect();
    for (a, ra) in ranks.iter().enumerate() {
        assert!(ra.leq(ra));
        for (b, rb) in ranks.iter().enumerate() {
            if a != b && ra.leq(rb) {
                assert!(!rb.leq(ra), "{} and {} share a rank function", convex[a], convex[b]);
            }
            for rc in &ranks {
                if ra.leq(rb) && rb.leq(rc) {
                    assert!(ra.leq(rc));
                }
            }
        }
    }
}

#[test]
fn hasse_fixtures_are_graded_by_codimension() {
    for (level, words) in W43_LEVELS.iter().enumerate() {
        for s in *words {
            assert_eq!(cell_codimension(&Word::parse(s, Some(3)).unwrap()), level, "{s}");
        }
    }
    let total: usize = W43_LEVELS.iter().map(|l| l.len()).sum();
    assert_eq!(total, enumerate_fubini(4, 3).unwrap().len());
    for (covers, k) in [(W43_COVERS, 3), (W32_COVERS, 2)] {
        for (lo, hi) in covers {
            let (v, w) = (Word::parse(lo, Some(k)).unwrap(), Word::parse(hi, Some(k)).unwrap());
            assert_eq!(cell_codimension(&w), cell_codimension(&v) + 1, "{lo} < {hi}");
            assert!(rank_function(&w).leq(&rank_function(&v)), "{lo} < {hi}");
        }
    }
}

#[test]
fn longest_double_schubert_factors() {
    for m in 1..=4 {
        let nv = 2 * m;
        let mut prod = MultiPoly::one(nv);
        for i in 1..=m {
            for j in 1..=m - i {
                prod = &prod * &(&MultiPoly::var(nv, i) - &MultiPoly::var(nv, m + j));
            }
        }
        assert_eq!(double_schubert(&Perm::longest(m)), prod, "m = {m}");
    }
}

#[test]
fn hilbert_series_sum_to_basis_size() {
    for n in 1..=5 {
        for k in 1..=n {
            let q = Quotient::shared(RingSpec::r(n, k).unwrap()).unwrap();
            assert_eq!(q.hilbert_series().eval_i64(1), factorial(k) * stirling2(n, k));
        }
    }
}
