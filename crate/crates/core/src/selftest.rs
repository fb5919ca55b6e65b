//! Self-check of the main identities, one report per criterion.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fieldlab::{canonicalize_traced, count_x, count_y, parse_rational_matrix, verify_free_action};
use crate::groebner::{groebner_oracle, RatPoly};
use crate::polyring::MultiPoly;
use crate::qseries::{binomial, factorial, q_binomial, q_factorial, q_stirling, rev_q, stirling2};
use crate::quotient::{Quotient, RingSpec};
use crate::schubert::{circledast_check, dual_stable_check, schubert_word};
use crate::symfunc::{grfrob_r, hilbert_from_frobenius};
use crate::words::{
    convexify, dimension_stat, enumerate_all, enumerate_fubini, enumerate_words_s, is_in_wnk, mahonian_distribution,
    standardize, Perm, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Reduced parameter ranges, a few seconds in total.
    Quick,
    /// The full acceptance ranges.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// First failing instance, if any.
    pub counterexample: Option<String>,
}

struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { checks: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
        ok
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

fn limit(scale: Scale, quick: usize, full: usize) -> usize {
    match scale {
        Scale::Quick => quick,
        Scale::Full => full,
    }
}

fn mahonian(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 6, 8) {
        for k in 1..=n {
            if let Some(lhs) = t.result(mahonian_distribution(n, k), || format!("W_{{{n},{k}}}")) {
                let rhs = &q_factorial(k) * &q_stirling(n, k);
                t.check(lhs == rhs, || format!("W_{{{n},{k}}}: {lhs} != {rhs}"));
            }
        }
    }
}

fn field_counts(scale: Scale, t: &mut Tally) {
    let cases: &[(usize, usize)] = match scale {
        Scale::Quick => &[(2, 2), (3, 2), (3, 3)],
        Scale::Full => &[(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)],
    };
    for &(n, k) in cases {
        for p in [2u32, 3] {
            if let Some(y) = t.result(count_y(n, k, p), || format!("|Y| ({n},{k},{p})")) {
                t.check(y.matches, || format!("{y:?}"));
            }
            if let Some(x) = t.result(count_x(n, k, p), || format!("|X| ({n},{k},{p})")) {
                t.check(x.matches, || format!("{x:?}"));
            }
        }
    }
    for (n, k, p) in [(2, 2, 2), (3, 2, 2)] {
        if let Some(r) = t.result(verify_free_action(n, k, p), || format!("free action ({n},{k},{p})")) {
            t.check(r.holds(), || format!("{r:?}"));
        }
    }
}

fn canonical_example(_: Scale, t: &mut Tally) {
    let m = parse_rational_matrix("0 0 0 2 0 0 3; 1 6 0 2 1 4 0; -1/3 0 -4 -8/3 -1/3 2/3 3").expect("literal");
    let last = parse_rational_matrix("0 0 0 1 0 0 1; 1 3 0 0 1 2 -1; 0 1 1 0 0 1 2").expect("literal");
    if let Some(c) = t.result(canonicalize_traced(&m), || "worked example".into()) {
        t.check(c.word.to_string() == "2331231", || format!("word {}", c.word));
        t.check(c.matrix == last, || format!("m' = {}", c.matrix));
    }
}

fn ring_sizes(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 5, 6) {
        for k in 1..=n {
            let Some(q) = t.result(Quotient::shared(RingSpec::R { n, k }), || format!("R({n},{k})")) else {
                continue;
            };
            let count = factorial(k) * stirling2(n, k);
            t.check(BigInt::from(q.basis().len()) == count, || format!("|basis R({n},{k})|"));
            let hilb = rev_q(&(&q_factorial(k) * &q_stirling(n, k)), None).expect("default degree");
            t.check(q.hilbert_series() == hilb, || format!("Hilb R({n},{k})"));
        }
    }
    for n in 1..=limit(scale, 4, 5) {
        for k in 1..=n {
            for s in 1..=k {
                let Some(q) = t.result(Quotient::shared(RingSpec::Rs { n, k, s }), || format!("Rs({n},{k},{s})")) else {
                    continue;
                };
                let words = enumerate_words_s(n, k, s).map(|w| w.len()).unwrap_or(0);
                t.check(q.basis().len() == words, || format!("|basis Rs({n},{k},{s})|"));
            }
        }
    }
    for n in 1..=limit(scale, 3, 4) {
        for k in 1..=3 {
            for r in 1..=n {
                let Some(q) = t.result(Quotient::shared(RingSpec::T { n, k, r }), || format!("T({n},{k},{r})")) else {
                    continue;
                };
                t.check(BigInt::from(q.basis().len()) == binomial(n + k - r, k) * factorial(n), || {
                    format!("|basis T({n},{k},{r})|")
                });
                let hilb = &q_binomial((n + k - r) as i64, k as i64) * &q_factorial(n);
                t.check(q.hilbert_series() == hilb, || format!("Hilb T({n},{k},{r})"));
            }
        }
    }
}

fn schubert_basis(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 4, 5) {
        for k in 1..=n {
            let Some(q) = t.result(Quotient::shared(RingSpec::R { n, k }), || format!("R({n},{k})")) else {
                continue;
            };
            if let Some(words) = t.result(q.schubert_words(), || format!("Schubert basis of R({n},{k})")) {
                t.check(words.len() == q.basis().len(), || format!("R({n},{k}) not square"));
            }
            for w in enumerate_all(n, k).iter().filter(|w| !is_in_wnk(w)) {
                if let Some(nf) = t.result(q.normal_form(&schubert_word(w)), || format!("NF(S_{w})")) {
                    t.check(nf.is_zero(), || format!("NF(S_{w}) = {nf} in R({n},{k})"));
                }
            }
        }
    }
}

fn structure_constants(scale: Scale, t: &mut Tally) {
    let w = |s: &str| Word::parse(s, Some(3)).expect("literal");
    if let Some(q) = t.result(Quotient::shared(RingSpec::R { n: 4, k: 3 }), || "R(4,3)".into()) {
        if let Some(e) = t.result(q.structure_constants(&w("1123"), &w("1232")), || "S_1123 * S_1232".into()) {
            t.check(e.get("1132") == BigInt::from(-1) && e.get("2213") == BigInt::from(2) && e.0.len() == 2, || {
                format!("S_1123 * S_1232 = {:?}", e.pairs())
            });
        }
    }
    for n in 1..=limit(scale, 3, 4) {
        let Some(q) = t.result(Quotient::shared(RingSpec::R { n, k: n }), || format!("R({n},{n})")) else {
            continue;
        };
        let words = q.schubert_words().unwrap_or_default();
        for u in &words {
            for v in &words {
                if let Some(e) = t.result(q.structure_constants(u, v), || format!("S_{u} * S_{v}")) {
                    t.check(e.0.values().all(|c| c.sign() != num_bigint::Sign::Minus), || {
                        format!("S_{u} * S_{v} = {:?}", e.pairs())
                    });
                }
            }
        }
    }
}

fn stability(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 5, 6) {
        for k in 1..=n {
            for w in enumerate_fubini(n, k).unwrap_or_default() {
                t.check(circledast_check(&w), || format!("S_(w (*) 1) != S_w for {w}"));
            }
        }
    }
    for n in 1..=limit(scale, 4, 5) {
        for k in 1..=n {
            for w in enumerate_fubini(n, k).unwrap_or_default() {
                if let Some(r) = t.result(dual_stable_check(&w, 1), || format!("{w}")) {
                    t.check(r.holds, || format!("reversal-restriction fails for {w}"));
                }
            }
        }
    }
}

fn frobenius(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 5, 6) {
        for k in 1..=n {
            let (Some(q), Some(f)) = (
                t.result(Quotient::shared(RingSpec::R { n, k }), || format!("R({n},{k})")),
                t.result(grfrob_r(n, k), || format!("grFrob R({n},{k})")),
            ) else {
                continue;
            };
            t.check(hilbert_from_frobenius(&f) == q.hilbert_series(), || format!("Hilbert series of R({n},{k})"));
            if n > limit(scale, 3, 4) {
                continue;
            }
            let words = enumerate_fubini(n, k).unwrap_or_default();
            for p in Perm::all(n) {
                let (Some(trace), Some(chi)) = (
                    t.result(q.graded_trace(&p), || format!("trace of {p} on R({n},{k})")),
                    t.result(f.character(&p.cycle_type()), || format!("character at {p}")),
                ) else {
                    continue;
                };
                t.check(trace == chi, || format!("R({n},{k}), p = {p}: {trace} vs {chi}"));
                let fixed = words.iter().filter(|w| p.act_on_word(w).is_ok_and(|v| v == **w)).count();
                t.check(trace.eval_i64(1) == BigInt::from(fixed), || format!("R({n},{k}), p = {p}: fixed words"));
            }
        }
    }
}

fn sample_polys(n: usize, count: usize, seed: u64) -> Vec<MultiPoly> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut f = MultiPoly::zero(n);
            for _ in 0..rng.gen_range(1..=6) {
                let mut e = vec![0u32; n];
                for _ in 0..rng.gen_range(0..=5) {
                    e[rng.gen_range(0..n)] += 1;
                }
                f.add_term(e, BigInt::from(rng.gen_range(-5..=5)));
            }
            f
        })
        .collect()
}

fn oracle(scale: Scale, t: &mut Tally) {
    let mut specs: Vec<RingSpec> =
        (1..=limit(scale, 3, 4)).flat_map(|n| (1..=n).map(move |k| RingSpec::R { n, k })).collect();
    specs.push(RingSpec::T { n: 2, k: 2, r: 1 });
    for (i, spec) in specs.into_iter().enumerate() {
        let (Some(q), Some(o)) = (
            t.result(Quotient::shared(spec), || format!("{spec}")),
            t.result(groebner_oracle(spec), || format!("oracle {spec}")),
        ) else {
            continue;
        };
        t.check(o.standard_monomials() == q.basis(), || format!("{spec}: standard monomials differ"));
        for f in sample_polys(spec.n(), limit(scale, 20, 100), 0x5eed + i as u64) {
            if let Some(a) = t.result(q.normal_form(&f), || format!("NF({f})")) {
                let b = o.normal_form(&f);
                t.check(b.is_ok_and(|b| b == RatPoly::from_int(&a)), || format!("{spec}: normal forms of {f} differ"));
            }
        }
    }
}

fn degree_law(scale: Scale, t: &mut Tally) {
    for n in 1..=limit(scale, 5, 6) {
        for k in 1..=n {
            for w in enumerate_fubini(n, k).unwrap_or_default() {
                let d = schubert_word(&w).homogeneous_degree().map(|d| d as usize);
                let expected = dimension_stat(&w)
                    .ok()
                    .and_then(|dim| (binomial(k, 2).to_usize()? + (n - k) * (k - 1)).checked_sub(dim));
                t.check(d.is_some() && d == expected, || format!("deg S_{w} = {d:?}, expected {expected:?}"));
                let inv = standardize(&convexify(&w)).inversions();
                t.check(d == Some(inv), || format!("deg S_{w} = {d:?}, inv(std(conv(w))) = {inv}"));
            }
        }
    }
}

type Runner = fn(Scale, &mut Tally);

const CRITERIA: [(&str, Runner); 10] = [
    ("dim is Mahonian on W_{n,k}", mahonian),
    ("orbit counts over F_p and free action", field_counts),
    ("canonicalization worked example", canonical_example),
    ("standard bases and Hilbert series", ring_sizes),
    ("Schubert basis of R_{n,k} and vanishing", schubert_basis),
    ("structure constants", structure_constants),
    ("stability of word Schubert polynomials", stability),
    ("Frobenius characteristic and graded traces", frobenius),
    ("rewriting vs Buchberger normal forms", oracle),
    ("degree law", degree_law),
];

/// Run every criterion, in parallel, reporting in a fixed order.
pub fn run(scale: Scale) -> Vec<CriterionReport> {
    CRITERIA
        .par_iter()
        .enumerate()
        .map(|(i, (name, runner))| {
            let mut t = Tally::new();
            runner(scale, &mut t);
            CriterionReport { id: i + 1, name, passed: !t.failed(), checks: t.checks, counterexample: t.failure }
        })
        .collect()
}
