//! Partitions, standard Young tableaux, Schur polynomials, symmetric-group
//! characters, and graded Frobenius characteristics of `R_{n,k}` and `T_{n,k,r}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{complete_sym, MultiPoly};
use crate::qseries::{factorial, q_binomial, QPoly};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Param(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Parse `2,1`, `(2,1)` or `[2,1]`.
    pub fn parse(s: &str) -> Result<Partition> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(format!("part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `f^lambda` by the hook length formula.
    pub fn num_syt(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::from(1);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks *= BigInt::from(row - j - 1 + conj.0[j] - i - 1 + 1);
            }
        }
        factorial(self.size()) / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Partitions of `n`, in decreasing lex order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau in English notation: `rows[i][j]` is the entry in row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    fn row_of(&self) -> Vec<usize> {
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut row = vec![0; n + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for &x in r {
                row[x] = i;
            }
        }
        row
    }

    /// Entries `i` with `i + 1` in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let row = self.row_of();
        (1..row.len() - 1).filter(|&i| row[i + 1] > row[i]).collect()
    }
}

pub fn maj(t: &Tableau) -> usize {
    t.descents().iter().sum()
}

pub fn des(t: &Tableau) -> usize {
    t.descents().len()
}

/// All standard fillings of `lambda`.
pub fn syt(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.size();
    let mut out = Vec::new();
    fn rec(lambda: &[usize], next: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..lambda.len() {
            let len = rows[i].len();
            if len < lambda[i] && (i == 0 || rows[i - 1].len() > len) {
                rows[i].push(next);
                rec(lambda, next + 1, n, rows, out);
                rows[i].pop();
            }
        }
    }
    rec(&lambda.0, 1, n, &mut vec![Vec::new(); lambda.len()], &mut out);
    out
}

/// `s_lambda(x_1..x_nvars) = det(h_{lambda_i - i + j})`.
pub fn schur_poly(lambda: &Partition, nvars: usize) -> MultiPoly {
    let l = lambda.len();
    if l > nvars {
        return MultiPoly::zero(nvars);
    }
    if l == 0 {
        return MultiPoly::one(nvars);
    }
    let vars: Vec<usize> = (1..=nvars).collect();
    let h = |d: i64| if d < 0 { MultiPoly::zero(nvars) } else { complete_sym(d as usize, &vars, nvars) };
    let entries: Vec<Vec<MultiPoly>> =
        (0..l).map(|i| (0..l).map(|j| h(lambda.0[i] as i64 - i as i64 + j as i64)).collect()).collect();
    determinant(&entries, nvars)
}

fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    fn rec(m: &[Vec<MultiPoly>], row: usize, cols: &mut Vec<usize>, nvars: usize) -> MultiPoly {
        if row == m.len() {
            return MultiPoly::one(nvars);
        }
        let mut out = MultiPoly::zero(nvars);
        for idx in 0..cols.len() {
            let c = cols[idx];
            if m[row][c].is_zero() {
                continue;
            }
            cols.remove(idx);
            let minor = rec(m, row + 1, cols, nvars);
            cols.insert(idx, c);
            let term = &m[row][c] * &minor;
            out = if idx % 2 == 0 { &out + &term } else { &out - &term };
        }
        out
    }
    rec(m, 0, &mut (0..m.len()).collect(), nvars)
}

/// `chi^lambda` at the class of cycle type `mu`, by Murnaghan-Nakayama on beta numbers.
pub fn irr_character(lambda: &Partition, mu: &[usize]) -> Result<BigInt> {
    if lambda.size() != mu.iter().sum::<usize>() || mu.contains(&0) {
        return Err(Error::Param(format!("{lambda} and cycle type {mu:?} have different sizes")));
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda.0.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    Ok(mn(beta, mu))
}

fn mn(beta: Vec<usize>, mu: &[usize]) -> BigInt {
    let Some((&r, rest)) = mu.split_first() else {
        return BigInt::from(1);
    };
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += mn(next, rest) * sign;
    }
    total
}

/// A graded Frobenius characteristic `sum_lambda c_lambda(q) s_lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion(pub BTreeMap<Partition, QPoly>);

impl SchurExpansion {
    pub fn coeff(&self, lambda: &Partition) -> QPoly {
        self.0.get(lambda).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn scale(&self, c: &QPoly) -> SchurExpansion {
        SchurExpansion(
            self.0.iter().map(|(l, p)| (l.clone(), p * c)).filter(|(_, p)| !p.is_zero()).collect(),
        )
    }

    fn add_to(&mut self, lambda: Partition, c: QPoly) {
        let entry = self.0.entry(lambda).or_insert_with(QPoly::zero);
        *entry = &*entry + &c;
    }

    /// `sum_lambda c_lambda(q) chi^lambda(mu)`
    pub fn character(&self, mu: &[usize]) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for (l, c) in &self.0 {
            out = &out + &c.scale(&irr_character(l, mu)?);
        }
        Ok(out)
    }
}

impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(&Partition, &QPoly)> = self.0.iter().collect();
        pairs.serialize(s)
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.0.iter().rev().map(|(l, c)| format!("({c}) s{l}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `sum_{T in SYT(n)} q^{maj(T)} [n - des(T) - 1, n - k]_q s_{shape(T)}`
pub fn grfrob_r(n: usize, k: usize) -> Result<SchurExpansion> {
    if k == 0 || k > n {
        return Err(Error::Param(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let mut out = SchurExpansion::default();
    for lambda in partitions(n) {
        for t in syt(&lambda) {
            let c = &QPoly::monomial(1, maj(&t)) * &q_binomial((n - des(&t) - 1) as i64, (n - k) as i64);
            if !c.is_zero() {
                out.add_to(lambda.clone(), c);
            }
        }
    }
    Ok(out)
}

/// `[n + k - r, k]_q grFrob(R_n; q)`
pub fn grfrob_t(n: usize, k: usize, r: usize) -> Result<SchurExpansion> {
    if r == 0 || r > n {
        return Err(Error::Param(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    Ok(grfrob_r(n, n)?.scale(&q_binomial((n + k - r) as i64, k as i64)))
}

/// `s_lambda -> f^lambda`
pub fn hilbert_from_frobenius(e: &SchurExpansion) -> QPoly {
    e.0.iter().fold(QPoly::zero(), |acc, (l, c)| &acc + &c.scale(&l.num_syt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn tableaux() {
        let ts = syt(&part("2,1"));
        let mut majs: Vec<usize> = ts.iter().map(maj).collect();
        majs.sort();
        assert_eq!(majs, vec![1, 2]);
        let row = syt(&part("4"));
        assert_eq!((row.len(), maj(&row[0]), des(&row[0])), (1, 0, 0));
        let col = syt(&part("1,1,1,1"));
        assert_eq!((col.len(), maj(&col[0]), des(&col[0])), (1, 6, 3));
        assert_eq!(part("3,2,1").num_syt(), BigInt::from(16));
        assert_eq!(syt(&part("3,2,1")).len(), 16);
    }

    #[test]
    fn schur_small() {
        assert_eq!(schur_poly(&part("1"), 3), MultiPoly::parse("x1 + x2 + x3", 3).unwrap());
        assert_eq!(schur_poly(&part("1,1"), 2), MultiPoly::parse("x1*x2", 2).unwrap());
        assert!(schur_poly(&part("1,1,1"), 2).is_zero());
        assert_eq!(schur_poly(&part("2,1"), 2), MultiPoly::parse("x1^2*x2 + x1*x2^2", 2).unwrap());
    }

    #[test]
    fn characters() {
        assert_eq!(irr_character(&part("1,1"), &[2]).unwrap(), BigInt::from(-1));
        assert_eq!(irr_character(&part("2,1"), &[1, 1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(irr_character(&part("2,1"), &[3]).unwrap(), BigInt::from(-1));
        assert_eq!(irr_character(&part("2,1"), &[2, 1]).unwrap(), BigInt::from(0));
        assert_eq!(irr_character(&part("3,1"), &[2, 2]).unwrap(), BigInt::from(-1));
        assert!(irr_character(&part("2"), &[1]).is_err());
    }

    #[test]
    fn frobenius_small() {
        let e = grfrob_r(1, 1).unwrap();
        assert_eq!(e.coeff(&part("1")), QPoly::one());
        assert_eq!(hilbert_from_frobenius(&grfrob_r(3, 2).unwrap()), QPoly::from_coeffs(vec![1, 3, 2]));
        let t = grfrob_t(2, 2, 1).unwrap();
        assert_eq!(t.coeff(&part("2")), q_binomial(3, 2));
        assert_eq!(t.coeff(&part("1,1")), &q_binomial(3, 2) * &QPoly::monomial(1, 1));
    }
}
