//! Schubert polynomials of permutations and of words, double Schubert
//! polynomials, and the two stability statements for word Schubert polynomials.

use std::collections::{BTreeSet, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MultiPoly};
use crate::words::{circledast, convexify, is_in_wnk, one_times, sigma_of, standardize, Perm, Word};

fn memo() -> &'static RwLock<HashMap<Vec<usize>, MultiPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<usize>, MultiPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `S_w` in `x_1..x_m` for `w in S_m`, by descending divided differences from `w_0`.
pub fn schubert_perm(w: &Perm) -> MultiPoly {
    let m = w.len();
    if let Some(p) = memo().read().unwrap_or_else(|e| e.into_inner()).get(w.images()) {
        return p.clone();
    }
    // Walk up to w_0 through ascents, then come back down applying d_i.
    let mut chain = Vec::new();
    let mut cur = w.clone();
    let mut top = loop {
        if let Some(p) = memo().read().unwrap_or_else(|e| e.into_inner()).get(cur.images()) {
            break p.clone();
        }
        match (1..m).find(|&i| cur.at(i) < cur.at(i + 1)) {
            None => {
                let exps: Monomial = (0..m).map(|i| (m - 1 - i) as u32).collect();
                break MultiPoly::monomial(exps, 1);
            }
            Some(i) => {
                chain.push((cur.clone(), i));
                cur = cur.swap_positions(i);
            }
        }
    };
    let mut fresh = vec![(cur, top.clone())];
    while let Some((v, i)) = chain.pop() {
        top = top.divided_difference(i).expect("index in range");
        fresh.push((v, top.clone()));
    }
    let mut guard = memo().write().unwrap_or_else(|e| e.into_inner());
    for (v, p) in fresh {
        guard.entry(v.images().to_vec()).or_insert(p);
    }
    top
}

/// `S_w(x; y)` in `2m` variables, `x_1..x_m` followed by `y_1..y_m`:
/// the sum of `S_u(x) S_v(-y)` over `w = v^{-1} u` with `inv(u) + inv(v) = inv(w)`.
pub fn double_schubert(w: &Perm) -> MultiPoly {
    let m = w.len();
    let mut out = MultiPoly::zero(2 * m);
    for v in Perm::all(m) {
        let u = v.compose(w).expect("same size");
        if u.inversions() + v.inversions() != w.inversions() {
            continue;
        }
        let sx = schubert_perm(&u).extend_vars(2 * m);
        let sign = if v.inversions() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let sy = MultiPoly::from_terms(
            2 * m,
            schubert_perm(&v).terms().map(|(e, c)| {
                let mut shifted = vec![0; m];
                shifted.extend_from_slice(e);
                (shifted, c * &sign)
            }),
        );
        out = &out + &(&sx * &sy);
    }
    out
}

/// `S_w = sigma(w)^{-1}.S_{std(conv(w))}`, realized as the substitution
/// `x_i -> x_{sigma(w)(i)}` applied to `S_{std(conv(w))}`, in `x_1..x_n`.
pub fn schubert_word(w: &Word) -> MultiPoly {
    let n = w.n();
    let st = standardize(&convexify(w));
    let big = st.len();
    let sigma = sigma_of(w).extend(big);
    schubert_perm(&st)
        .act(&sigma)
        .expect("sizes agree")
        .truncate_vars(n)
        .expect("word Schubert polynomial lives in x_1..x_n")
}

fn iterate_one_times(w: &Perm, m: usize) -> Perm {
    (0..m).fold(w.clone(), |acc, _| acc.one_times())
}

/// `S_{1^m x w}` in `x_1..x_{n+m}`.
pub fn stanley_truncation(w: &Perm, m: usize) -> MultiPoly {
    schubert_perm(&iterate_one_times(w, m))
}

/// Coefficient comparison of `S_{1^j x w}` for `j = m, m+1, m+2`.
///
/// A monomial is reported stable when its coefficient is the same at all three
/// steps. This is a heuristic: it does not prove the limit value.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub m: usize,
    pub truncations: Vec<MultiPoly>,
    pub stable: MultiPoly,
    pub unstable: Vec<Monomial>,
    pub heuristic: bool,
}

pub fn stanley_stability(w: &Perm, m: usize, max_degree: Option<u32>) -> StabilityReport {
    let truncations: Vec<MultiPoly> = (m..m + 3).map(|j| stanley_truncation(w, j)).collect();
    let nv = truncations[2].nvars();
    let padded: Vec<MultiPoly> = truncations.iter().map(|p| p.extend_vars(nv)).collect();
    let monomials: BTreeSet<Monomial> = padded.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    let mut stable = MultiPoly::zero(nv);
    let mut unstable = Vec::new();
    for e in monomials {
        if max_degree.is_some_and(|d| e.iter().sum::<u32>() > d) {
            continue;
        }
        let c = padded[0].coeff(&e);
        if padded.iter().all(|p| p.coeff(&e) == c) {
            stable.add_term(e, c);
        } else {
            unstable.push(e);
        }
    }
    StabilityReport { m, truncations, stable, unstable, heuristic: true }
}

/// Outcome of the reversal-restriction identity
/// `S_{1 x v}(x*_{n+1})|_{x_{n+1}=0} = S_v(x*_n)` along `v = 1^j x w`.
#[derive(Clone, Debug, Serialize)]
pub struct DualStableReport {
    pub words: Vec<Word>,
    /// `S_{1^j x w}(x*_{n+j})` for `j = 0..=m`.
    pub reversed: Vec<MultiPoly>,
    pub holds: bool,
}

pub fn dual_stable_check(w: &Word, m: usize) -> Result<DualStableReport> {
    if !is_in_wnk(w) {
        return Err(Error::Word(format!("{w} is not in W_{{{},{}}}", w.n(), w.k())));
    }
    let mut words = vec![w.clone()];
    for _ in 0..m {
        let next = one_times(words.last().expect("nonempty"));
        words.push(next);
    }
    let reversed: Vec<MultiPoly> = words.iter().map(|v| schubert_word(v).reverse_vars()).collect();
    let holds = reversed.windows(2).all(|pair| {
        let nv = pair[1].nvars();
        pair[1].set_zero(nv).truncate_vars(nv - 1).is_ok_and(|p| p == pair[0])
    });
    Ok(DualStableReport { words, reversed, holds })
}

/// `S_{w (*) 1} = S_w`, comparing in `x_1..x_{n+1}`.
pub fn circledast_check(w: &Word) -> bool {
    let lhs = schubert_word(&circledast(w));
    lhs == schubert_word(w).extend_vars(w.n() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    fn w(s: &str, k: usize) -> Word {
        Word::parse(s, Some(k)).unwrap()
    }

    #[test]
    fn small_permutations() {
        assert_eq!(schubert_perm(&perm("123")), p("1", 3));
        assert_eq!(schubert_perm(&perm("321")), p("x1^2*x2", 3));
        assert_eq!(schubert_perm(&perm("132")), p("x1 + x2", 3));
        assert_eq!(schubert_perm(&perm("2143")), p("x1^2 + x1*x2 + x1*x3", 4));
        assert_eq!(schubert_perm(&perm("1432")), p("x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3", 4));
    }

    #[test]
    fn double_schubert_examples() {
        assert_eq!(double_schubert(&perm("21")), p("x1 - x3", 4));
        assert_eq!(double_schubert(&perm("123")), p("1", 6));
        let d = double_schubert(&perm("2143"));
        let y0: MultiPoly = (5..=8).fold(d, |acc, i| acc.set_zero(i));
        assert_eq!(y0.truncate_vars(4).unwrap(), schubert_perm(&perm("2143")));
    }

    #[test]
    fn word_examples() {
        assert_eq!(schubert_word(&w("211", 2)), p("x1", 3));
        assert_eq!(schubert_word(&w("2113", 3)), p("x1^2 + x1*x2 + x1*x3", 4));
        assert_eq!(schubert_word(&w("2123", 3)), p("x1^2*x3 + x1*x3^2", 4));
    }

    #[test]
    fn stanley_small() {
        let s1 = perm("21");
        assert_eq!(stanley_truncation(&s1, 1), p("x1 + x2", 3));
        assert_eq!(stanley_truncation(&s1, 2), p("x1 + x2 + x3", 4));
        let report = stanley_stability(&perm("1"), 0, None);
        assert!(report.unstable.is_empty());
    }

    #[test]
    fn circledast_example() {
        assert_eq!(circledast(&w("3313424", 4)).to_string(), "33134242");
        assert!(circledast_check(&w("3313424", 4)));
    }
}
