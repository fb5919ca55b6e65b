//! Matrices over the rationals and prime fields: the column-by-column
//! canonical form for `U \ M_{n,k} / T`, and brute-force orbit counts over `F_p`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cells::{pattern_matrix, Entry};
use crate::error::{Error, Result};
use crate::qseries::{binomial, q_factorial, q_stirling};
use crate::words::{dimension_stat, enumerate_fubini, Word};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Enumeration limit, overridable through `FUBINI_BUDGET`.
pub fn budget() -> u128 {
    std::env::var("FUBINI_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Field operations needed by the elimination.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Residue modulo a prime `p`, stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Fp {
        Fp { v: v.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(&self) -> u32 {
        self.v
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn inv(&self) -> Self {
        // Fermat: a^(p-2).
        let (mut base, mut e, mut acc) = (self.v as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { v: acc as u32, p: self.p }
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A `k x n` matrix; row `i` is indexed by letter `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: Vec<Vec<F>>,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: Vec<Vec<F>>) -> Result<Matrix<F>> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows must be nonempty and of equal length".into()));
        }
        Ok(Matrix { rows })
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i - 1][j - 1]
    }

    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let (k, n) = (self.k(), self.n());
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..k).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][col].inv();
            for r in 0..k {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].mul(&inv);
                    for c in col..n {
                        let t = a[rank][c].mul(&f);
                        a[r][c] = a[r][c].sub(&t);
                    }
                }
            }
            rank += 1;
            if rank == k {
                break;
            }
        }
        rank
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.n()).any(|j| self.rows.iter().all(|r| r[j].is_zero()))
    }

    /// Membership in `M_{n,k}`: full row rank and no zero column.
    pub fn check_in_m(&self) -> Result<()> {
        if let Some(j) = (0..self.n()).find(|&j| self.rows.iter().all(|r| r[j].is_zero())) {
            return Err(Error::Degenerate(format!("column {} is zero", j + 1)));
        }
        let r = self.rank();
        if r < self.k() {
            return Err(Error::Degenerate(format!("rank {r} < {}", self.k())));
        }
        Ok(())
    }

    /// Whether the matrix is obtained from `PM(w)` by filling in the stars.
    pub fn fits_pattern(&self, w: &Word) -> bool {
        if (w.k(), w.n()) != (self.k(), self.n()) {
            return false;
        }
        let pm = pattern_matrix(w);
        let one = self.rows[0][0].one_like();
        (1..=self.k()).all(|i| {
            (1..=self.n()).all(|j| match pm.get(i, j) {
                Entry::Zero => self.get(i, j).is_zero(),
                Entry::One => *self.get(i, j) == one,
                Entry::Star | Entry::Diamond => true,
            })
        })
    }

    /// `u m t` for lower unitriangular `u` and diagonal `t`.
    pub fn act(&self, u: &[Vec<F>], t: &[F]) -> Matrix<F> {
        let (k, n) = (self.k(), self.n());
        let zero = self.rows[0][0].zero_like();
        let rows = (0..k)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = (0..=i).fold(zero.clone(), |acc, l| acc.add(&u[i][l].mul(&self.rows[l][j])));
                        s.mul(&t[j])
                    })
                    .collect()
            })
            .collect();
        Matrix { rows }
    }
}

impl<F: Scalar> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

impl Serialize for Matrix<Fp> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u32>> = self.rows.iter().map(|r| r.iter().map(Fp::value).collect()).collect();
        rows.serialize(s)
    }
}

fn parse_rows(s: &str) -> Vec<Vec<&str>> {
    s.split([';', '\n'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| r.split([' ', ',', '\t']).filter(|x| !x.is_empty()).collect())
        .collect()
}

/// Parse rows separated by `;` or newlines; entries like `3`, `-1/3`.
pub fn parse_rational_matrix(s: &str) -> Result<Matrix<BigRational>> {
    let rows = parse_rows(s)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.parse::<BigRational>().map_err(|e| Error::Parse(format!("entry {x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(rows)
}

pub fn parse_fp_matrix(s: &str, p: u32) -> Result<Matrix<Fp>> {
    if !is_prime(p) {
        return Err(Error::Param(format!("{p} is not prime")));
    }
    let rows = parse_rows(s)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.parse::<i64>().map(|v| Fp::new(v, p)).map_err(|e| Error::Parse(format!("entry {x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(rows)
}

/// Result of the elimination, with a snapshot after each processed column.
#[derive(Clone, Debug)]
pub struct Canonical<F> {
    pub word: Word,
    pub matrix: Matrix<F>,
    pub stages: Vec<Matrix<F>>,
}

/// The unique `(w, m')` with `m'` fitting `PM(w)` and `m' in U m T`.
pub fn canonicalize<F: Scalar>(m: &Matrix<F>) -> Result<(Word, Matrix<F>)> {
    let c = canonicalize_traced(m)?;
    Ok((c.word, c.matrix))
}

pub fn canonicalize_traced<F: Scalar>(m: &Matrix<F>) -> Result<Canonical<F>> {
    m.check_in_m()?;
    let (k, n) = (m.k(), m.n());
    let mut a = m.rows.clone();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; k + 1];
    let mut initial_order: Vec<usize> = Vec::new();
    let mut stages = Vec::with_capacity(n);
    for j in 0..n {
        let fresh = (1..=k).find(|&i| !used[i] && !a[i - 1][j].is_zero());
        let letter = match fresh {
            Some(i) => {
                for r in i..k {
                    if !a[r][j].is_zero() {
                        let f = a[r][j].mul(&a[i - 1][j].inv());
                        for c in 0..n {
                            let t = a[i - 1][c].mul(&f);
                            a[r][c] = a[r][c].sub(&t);
                        }
                    }
                }
                used[i] = true;
                initial_order.push(i);
                i
            }
            None => *initial_order
                .iter()
                .rev()
                .find(|&&i| !a[i - 1][j].is_zero())
                .expect("nonzero column has a nonzero entry in a used row"),
        };
        let scale = a[letter - 1][j].inv();
        for row in a.iter_mut() {
            row[j] = row[j].mul(&scale);
        }
        word.push(letter);
        stages.push(Matrix { rows: a.clone() });
    }
    Ok(Canonical { word: Word::new(word, k)?, matrix: Matrix { rows: a }, stages })
}

fn check_budget(n: usize, k: usize, p: u32) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::Param(format!("{p} is not prime")));
    }
    let needed = (p as u128).checked_pow((k * n) as u32).unwrap_or(u128::MAX);
    let limit = budget();
    if needed > limit {
        return Err(Error::Budget { needed, limit });
    }
    Ok(needed)
}

fn decode(mut idx: u128, n: usize, k: usize, p: u32) -> Matrix<Fp> {
    let mut rows = vec![vec![Fp { v: 0, p }; n]; k];
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            x.v = (idx % p as u128) as u32;
            idx /= p as u128;
        }
    }
    Matrix { rows }
}

/// Every matrix of `M_{n,k}(F_p)` exactly once.
pub fn enumerate_m(n: usize, k: usize, p: u32) -> Result<impl Iterator<Item = Matrix<Fp>>> {
    let total = check_budget(n, k, p)?;
    Ok((0..total).map(move |i| decode(i, n, k, p)).filter(|m| m.check_in_m().is_ok()))
}

/// Same set, split into shards processed in parallel.
fn par_enumerate_m(n: usize, k: usize, p: u32) -> Result<impl ParallelIterator<Item = Matrix<Fp>>> {
    let total = check_budget(n, k, p)?;
    let shard = 4096u128;
    let shards = total.div_ceil(shard) as u64;
    Ok((0..shards).into_par_iter().flat_map_iter(move |s| {
        let lo = s as u128 * shard;
        let hi = (lo + shard).min(total);
        (lo..hi).map(move |i| decode(i, n, k, p)).filter(|m| m.check_in_m().is_ok())
    }))
}

fn q_eval(p: u32, f: impl Fn() -> crate::qseries::QPoly) -> BigInt {
    f().eval(&BigInt::from(p))
}

/// Two ways of counting each orbit set, and whether they agree.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    #[serde(serialize_with = "ser_big")]
    pub closed_form: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub enumerated: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub pattern_sum: BigInt,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn ser_big<S: Serializer>(c: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::qseries::JsonInt(c).serialize(s)
}

fn validate_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Param(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `sum_{w in W_{n,k}} p^{dim(w)}`
fn pattern_sum(n: usize, k: usize, p: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for w in enumerate_fubini(n, k)? {
        total += BigInt::from(p).pow(dimension_stat(&w)? as u32);
    }
    Ok(total)
}

/// `|Y_{n,k}(F_p)|`: closed form `[k]!_p Stir_p(n,k)` against the number of distinct
/// canonical forms among all matrices of `M_{n,k}(F_p)`.
pub fn count_y(n: usize, k: usize, p: u32) -> Result<CountReport> {
    validate_nk(n, k)?;
    let closed_form = q_eval(p, || &q_factorial(k) * &q_stirling(n, k));
    let forms: HashSet<(Word, Matrix<Fp>)> = par_enumerate_m(n, k, p)?
        .map(|m| canonicalize(&m).expect("matrix lies in M"))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let enumerated = BigInt::from(forms.len());
    let pattern_sum = pattern_sum(n, k, p)?;
    let matches = closed_form == enumerated && enumerated == pattern_sum;
    Ok(CountReport { n, k, p, closed_form, enumerated, pattern_sum, matches })
}

/// `|X_{n,k}(F_p)|`: closed form `p^{C(k,2)} [k]!_p Stir_p(n,k)` against `|M| / (p-1)^n`.
pub fn count_x(n: usize, k: usize, p: u32) -> Result<CountReport> {
    validate_nk(n, k)?;
    let y = q_eval(p, || &q_factorial(k) * &q_stirling(n, k));
    let u_size = BigInt::from(p).pow(binomial(k, 2).to_u32().expect("small"));
    let closed_form = &u_size * &y;
    let total = par_enumerate_m(n, k, p)?.count();
    let t_size = BigInt::from(p - 1).pow(n as u32);
    let enumerated = BigInt::from(total) / &t_size;
    let pattern_sum = &u_size * pattern_sum(n, k, p)?;
    let matches = closed_form == enumerated && enumerated == pattern_sum && BigInt::from(total) % t_size == BigInt::zero();
    Ok(CountReport { n, k, p, closed_form, enumerated, pattern_sum, matches })
}

fn group_u(k: usize, p: u32) -> Vec<Vec<Vec<Fp>>> {
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let count = (p as usize).pow(slots.len() as u32);
    (0..count)
        .map(|mut idx| {
            let mut u = vec![vec![Fp { v: 0, p }; k]; k];
            for (i, row) in u.iter_mut().enumerate() {
                row[i].v = 1;
            }
            for &(i, j) in &slots {
                u[i][j].v = (idx % p as usize) as u32;
                idx /= p as usize;
            }
            u
        })
        .collect()
}

fn group_t(n: usize, p: u32) -> Vec<Vec<Fp>> {
    let count = (p as usize - 1).pow(n as u32);
    (0..count)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = (idx % (p as usize - 1)) as u32 + 1;
                    idx /= p as usize - 1;
                    Fp { v, p }
                })
                .collect()
        })
        .collect()
}

/// The `U x T` orbit of `m`, by sweeping the whole group.
pub fn orbit(m: &Matrix<Fp>, p: u32) -> HashSet<Matrix<Fp>> {
    let us = group_u(m.k(), p);
    let ts = group_t(m.n(), p);
    us.iter().flat_map(|u| ts.iter().map(move |t| m.act(u, t))).collect()
}

/// Freeness and uniqueness over `F_p`, by brute force.
#[derive(Clone, Debug, Serialize)]
pub struct FreeActionReport {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub matrices: usize,
    pub group_order: usize,
    /// Every orbit has `|U| |T|` elements.
    pub free: bool,
    /// Equal canonical forms exactly on orbits.
    pub canonical_forms_separate_orbits: bool,
}

impl FreeActionReport {
    pub fn holds(&self) -> bool {
        self.free && self.canonical_forms_separate_orbits
    }
}

pub fn verify_free_action(n: usize, k: usize, p: u32) -> Result<FreeActionReport> {
    validate_nk(n, k)?;
    let all: Vec<Matrix<Fp>> = enumerate_m(n, k, p)?.collect();
    let group_order = (p as usize).pow(binomial(k, 2).to_u32().expect("small")) * (p as usize - 1).pow(n as u32);
    let budget_needed = all.len() as u128 * group_order as u128;
    if budget_needed > budget() {
        return Err(Error::Budget { needed: budget_needed, limit: budget() });
    }
    let forms: HashMap<&Matrix<Fp>, (Word, Matrix<Fp>)> =
        all.par_iter().map(|m| (m, canonicalize(m).expect("matrix lies in M"))).collect::<Vec<_>>().into_iter().collect();
    let mut class_size: HashMap<&(Word, Matrix<Fp>), usize> = HashMap::new();
    for f in forms.values() {
        *class_size.entry(f).or_default() += 1;
    }
    let results: Vec<(bool, bool)> = all
        .par_iter()
        .map(|m| {
            let orb = orbit(m, p);
            let form = &forms[m];
            let same = orb.iter().all(|x| &forms[x] == form);
            (orb.len() == group_order, same && class_size[form] == orb.len())
        })
        .collect();
    Ok(FreeActionReport {
        n,
        k,
        p,
        matrices: all.len(),
        group_order,
        free: results.iter().all(|r| r.0),
        canonical_forms_separate_orbits: results.iter().all(|r| r.1),
    })
}

/// `p^{C(k,2)} (p-1)^n`, the orbit size on `M_{n,k}(F_p)`.
pub fn free_orbit_size(n: usize, k: usize, p: u32) -> BigInt {
    BigInt::from(p).pow(binomial(k, 2).to_u32().expect("small")) * BigInt::from(p - 1).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = Fp::new(3, 7);
        assert_eq!(a.mul(&a.inv()), a.one_like());
        assert_eq!(Fp::new(-1, 5).value(), 4);
    }

    #[test]
    fn pattern_fixed_point() {
        let m = parse_rational_matrix("0 0 0 1 0 0 1; 1 5 -2 0 1 7 3; 0 1 1 0 0 1 4").unwrap();
        let w = Word::parse("2331231", Some(3)).unwrap();
        assert!(m.fits_pattern(&w));
        let (v, m2) = canonicalize(&m).unwrap();
        assert_eq!(v, w);
        assert_eq!(m2, m);
    }

    #[test]
    fn rejects_degenerate() {
        let m = parse_rational_matrix("1 0; 1 0").unwrap();
        assert!(matches!(canonicalize(&m), Err(Error::Degenerate(_))));
        let m = parse_rational_matrix("1 0 1; 0 0 1").unwrap();
        assert!(matches!(canonicalize(&m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_m(2, 2, 2).unwrap().count(), 6);
        assert_eq!(enumerate_m(1, 2, 2).unwrap().count(), 0);
        let m32: Vec<_> = enumerate_m(3, 2, 2).unwrap().collect();
        assert_eq!(m32.len(), 24);
        let words: HashSet<Word> = m32.iter().map(|m| canonicalize(m).unwrap().0).collect();
        assert_eq!(words.len(), 6);
        assert!(count_y(3, 2, 2).unwrap().matches);
        assert_eq!(count_y(3, 2, 2).unwrap().enumerated, BigInt::from(12));
        assert_eq!(count_x(3, 2, 2).unwrap().closed_form, BigInt::from(24));
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(enumerate_m(5, 5, 7).err(), Some(Error::Budget { .. })));
        assert!(enumerate_m(2, 2, 4).is_err());
    }
}
