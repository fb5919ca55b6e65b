use fubini::fieldlab::{canonicalize, enumerate_m, orbit};
use fubini::qseries::{q_factorial, QPoly};
use fubini::quotient::{Quotient, RingSpec};
use fubini::schubert::{schubert_perm, schubert_word, stanley_stability};
use fubini::symfunc::{grfrob_r, grfrob_t, hilbert_from_frobenius, Partition};
use fubini::words::{convexify, enumerate_fubini, is_convex, sigma_of, standardize, Perm, Word};
use fubini::Error;
use std::collections::HashSet;

fn word(s: &str, k: usize) -> Word {
    Word::parse(s, Some(k)).unwrap()
}

#[test]
fn sigma_sorts_each_word_into_its_convexification() {
    for n in 1..=6 {
        for k in 1..=n {
            for w in enumerate_fubini(n, k).unwrap() {
                let c = convexify(&w);
                assert!(is_convex(&c));
                assert_eq!(sigma_of(&w).act_on_word(&w).unwrap(), c, "w = {w}");
            }
        }
    }
}

#[test]
fn word_schubert_polynomials_are_relabelled_permutation_ones() {
    // With the substitution x_i -> x_{sigma(i)} these are the values in the worked examples.
    let cases = [
        ("211", 2, "x1"),
        ("2113", 3, "x1^2 + x1*x2 + x1*x3"),
        ("2123", 3, "x1^2*x3 + x1*x3^2"),
    ];
    for (w, k, expected) in cases {
        let w = word(w, k);
        assert_eq!(schubert_word(&w).to_string(), expected, "S_{w}");
    }
    for w in enumerate_fubini(4, 4).unwrap() {
        assert_eq!(schubert_word(&w), schubert_perm(&standardize(&w)));
    }
}

#[test]
fn frobenius_characteristics_give_hilbert_series() {
    let f = grfrob_r(3, 2).unwrap();
    assert_eq!(f.coeff(&Partition::parse("3").unwrap()), QPoly::from_coeffs(vec![1, 1]));
    assert_eq!(f.coeff(&Partition::parse("2,1").unwrap()), QPoly::from_coeffs(vec![0, 1, 1]));
    assert!(f.coeff(&Partition::parse("1,1,1").unwrap()).is_zero());
    for n in 1..=4 {
        for k in 1..=3 {
            for r in 1..=n {
                let q = Quotient::shared(RingSpec::t(n, k, r).unwrap()).unwrap();
                assert_eq!(hilbert_from_frobenius(&grfrob_t(n, k, r).unwrap()), q.hilbert_series(), "T({n},{k},{r})");
            }
        }
    }
    // R_{n,n} is the coinvariant algebra.
    for n in 1..=5 {
        assert_eq!(hilbert_from_frobenius(&grfrob_r(n, n).unwrap()), q_factorial(n));
    }
}

#[test]
fn small_orbit_spaces_over_f2() {
    assert_eq!(enumerate_m(2, 2, 2).unwrap().count(), 6);
    let all: Vec<_> = enumerate_m(3, 2, 2).unwrap().collect();
    assert_eq!(all.len(), 24);
    let forms: HashSet<_> = all.iter().map(|m| canonicalize(m).unwrap()).collect();
    assert_eq!(forms.len(), 12);
    let words: HashSet<Word> = forms.iter().map(|(w, _)| w.clone()).collect();
    assert_eq!(words.len(), 6);
    for m in &all {
        let o = orbit(m, 2);
        let c = canonicalize(m).unwrap();
        assert!(o.iter().all(|x| canonicalize(x).unwrap() == c));
    }
}

#[test]
fn stanley_report_is_flagged_heuristic() {
    let r = stanley_stability(&Perm::parse("132").unwrap(), 0, None);
    assert!(r.heuristic);
    assert_eq!(r.truncations.len(), 3);
    assert_eq!(r.stable.to_string(), "x1 + x2");
    assert!(r.unstable.iter().any(|m| m[2] == 1));
}

#[test]
fn json_shapes() {
    let q = Quotient::shared(RingSpec::r(4, 3).unwrap()).unwrap();
    let e = q.structure_constants(&word("1123", 3), &word("1232", 3)).unwrap();
    assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"1132":-1,"2213":2}"#);
    assert_eq!(serde_json::to_string(&Quotient::shared(RingSpec::r(3, 2).unwrap()).unwrap().hilbert_series()).unwrap(), "[1,3,2]");
    let long = Word::new(vec![10, 2, 1], 10).unwrap();
    assert_eq!(serde_json::to_string(&long).unwrap(), "[10,2,1]");
    assert_eq!(Word::parse("[10,2,1]", Some(10)).unwrap(), long);
    assert_eq!(serde_json::to_string(&RingSpec::rs(4, 3, 2).unwrap()).unwrap(), r#"{"family":"Rs","n":4,"k":3,"s":2}"#);
    let big = QPoly::from_coeffs(vec![num_bigint::BigInt::from(u64::MAX) * 4u32]);
    assert_eq!(serde_json::to_string(&big).unwrap(), r#"["73786976294838206460"]"#);
}

#[test]
fn invalid_parameters_are_errors() {
    assert!(matches!(RingSpec::r(2, 3), Err(Error::Param(_))));
    assert!(matches!(RingSpec::rs(3, 2, 3), Err(Error::Param(_))));
    assert!(matches!(Word::parse("1204", None), Err(Error::Word(_))));
    assert!(matches!(Word::parse("12a", None), Err(Error::Parse(_))));
    assert!(matches!(enumerate_m(6, 4, 3).err(), Some(Error::Budget { .. })));
    let q = Quotient::shared(RingSpec::r(3, 2).unwrap()).unwrap();
    assert!(q.structure_constants(&word("111", 2), &word("112", 2)).unwrap().is_empty());
}
