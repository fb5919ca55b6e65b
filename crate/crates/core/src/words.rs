//! Words over `[k]`, permutations, and the Fubini-word statistics.
//!
//! The symmetric group acts on words by `pi.w = w_{pi_1} ... w_{pi_n}`.
//! Under this action `sigma(w).w = conv(w)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qseries::QPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<usize>,
    k: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, k: usize) -> Result<Word> {
        if let Some(&bad) = letters.iter().find(|&&a| a == 0 || a > k) {
            return Err(Error::Word(format!("letter {bad} outside [1,{k}]")));
        }
        Ok(Word { letters, k })
    }

    /// Parse a digit string (`"2113"`) or a JSON array (`"[2,1,1,13]"`).
    /// Without `k` the alphabet bound defaults to the largest letter.
    pub fn parse(s: &str, k: Option<usize>) -> Result<Word> {
        let s = s.trim();
        let letters: Vec<usize> = if s.starts_with('[') {
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("word {s:?}: {e}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("word {s:?}"))))
                .collect::<Result<_>>()?
        };
        let k = k.unwrap_or_else(|| letters.iter().copied().max().unwrap_or(1));
        Word::new(letters, k)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Result<Word> {
        Word::new(self.letters.clone(), k)
    }

    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct letters.
    pub fn distinct(&self) -> usize {
        pi_of(self).len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for a in &self.letters {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.letters)
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.k <= 9 {
            s.serialize_str(&self.to_string())
        } else {
            self.letters.serialize(s)
        }
    }
}

/// A permutation of `[m]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &a in &images {
            if a == 0 || a > m || seen[a] {
                return Err(Error::Perm(format!("{images:?} is not a permutation")));
            }
            seen[a] = true;
        }
        Ok(Perm { images })
    }

    pub fn parse(s: &str) -> Result<Perm> {
        let w = Word::parse(s, None)?;
        Perm::new(w.letters)
    }

    pub fn identity(m: usize) -> Perm {
        Perm { images: (1..=m).collect() }
    }

    /// The longest element `m (m-1) ... 1`.
    pub fn longest(m: usize) -> Perm {
        Perm { images: (1..=m).rev().collect() }
    }

    /// Adjacent transposition `s_i` in `S_m`.
    pub fn simple(i: usize, m: usize) -> Result<Perm> {
        if i == 0 || i >= m {
            return Err(Error::Perm(format!("s_{i} not in S_{m}")));
        }
        let mut p = Perm::identity(m);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `p(i)` for `1 <= i <= m`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &a) in self.images.iter().enumerate() {
            inv[a - 1] = i + 1;
        }
        Perm { images: inv }
    }

    /// Functional composition `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::Perm("composition of permutations of different sizes".into()));
        }
        Ok(Perm { images: other.images.iter().map(|&i| self.images[i - 1]).collect() })
    }

    pub fn inversions(&self) -> usize {
        inversions(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &a)| a == i + 1)
    }

    /// Swap the entries in positions `i` and `i+1`, i.e. right multiplication by `s_i`.
    pub fn swap_positions(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// Positions `i` with `p(i) > p(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    /// `1 x p`: prepend a fixed point and shift.
    pub fn one_times(&self) -> Perm {
        let mut images = Vec::with_capacity(self.len() + 1);
        images.push(1);
        images.extend(self.images.iter().map(|a| a + 1));
        Perm { images }
    }

    /// Embed into `S_m` by appending fixed points.
    pub fn extend(&self, m: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.len() + 1..=m);
        Perm { images }
    }

    /// `pi.w = w_{pi_1} ... w_{pi_n}`
    pub fn act_on_word(&self, w: &Word) -> Result<Word> {
        if self.len() != w.n() {
            return Err(Error::Perm(format!("S_{} acting on a word of length {}", self.len(), w.n())));
        }
        Word::new(self.images.iter().map(|&i| w.letters[i - 1]).collect(), w.k)
    }

    /// Cycle type as a weakly decreasing list.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] - 1;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// All of `S_m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut used = vec![false; m + 1];
        fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == m {
                out.push(Perm { images: cur.clone() });
                return;
            }
            for a in 1..=m {
                if !used[a] {
                    used[a] = true;
                    cur.push(a);
                    rec(m, cur, used, out);
                    cur.pop();
                    used[a] = false;
                }
            }
        }
        rec(m, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for a in &self.images {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.images)
        }
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.len() <= 9 {
            s.serialize_str(&self.to_string())
        } else {
            self.images.serialize(s)
        }
    }
}

pub fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// Letters `1..max(w)` all occur.
pub fn is_fubini(w: &Word) -> bool {
    let m = w.max_letter();
    let mut seen = vec![false; m + 1];
    for &a in &w.letters {
        seen[a] = true;
    }
    seen[1..].iter().all(|&b| b)
}

/// Membership in `W_{n,k}`: Fubini with every letter of `[k]` present.
pub fn is_in_wnk(w: &Word) -> bool {
    is_fubini(w) && w.max_letter() == w.k
}

fn enumerate_with(n: usize, alphabet: usize, k: usize, required: usize, distinct: bool) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut count = vec![0usize; alphabet + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        alphabet: usize,
        k: usize,
        required: usize,
        distinct: bool,
        cur: &mut Vec<usize>,
        count: &mut [usize],
        out: &mut Vec<Word>,
    ) {
        let missing = (1..=required).filter(|&a| count[a] == 0).count();
        if n - cur.len() < missing {
            return;
        }
        if cur.len() == n {
            out.push(Word { letters: cur.clone(), k });
            return;
        }
        for a in 1..=alphabet {
            if distinct && count[a] > 0 {
                continue;
            }
            count[a] += 1;
            cur.push(a);
            rec(n, alphabet, k, required, distinct, cur, count, out);
            cur.pop();
            count[a] -= 1;
        }
    }
    rec(n, alphabet, k, required, distinct, &mut cur, &mut count, &mut out);
    out
}

/// `W_{n,k}` in lexicographic order.
pub fn enumerate_fubini(n: usize, k: usize) -> Result<Vec<Word>> {
    if k == 0 || k > n {
        return Err(Error::Param(format!("W_{{n,k}} needs 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(enumerate_with(n, k, k, k, false))
}

/// `W_{n,k,s}`: words in `[k]^n` containing `1..s`.
pub fn enumerate_words_s(n: usize, k: usize, s: usize) -> Result<Vec<Word>> {
    if s == 0 || s > k || k > n {
        return Err(Error::Param(format!("W_{{n,k,s}} needs 1 <= s <= k <= n, got ({n},{k},{s})")));
    }
    Ok(enumerate_with(n, k, k, s, false))
}

/// Words of length `n` over `[n+k]` with distinct letters containing `1..r`.
pub fn enumerate_tail(n: usize, k: usize, r: usize) -> Result<Vec<Word>> {
    if r == 0 || r > n {
        return Err(Error::Param(format!("tail words need 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok(enumerate_with(n, n + k, n + k, r, true))
}

/// All of `[k]^n` in lexicographic order.
pub fn enumerate_all(n: usize, k: usize) -> Vec<Word> {
    enumerate_with(n, k, k, 0, false)
}

/// 1-based positions whose letter does not occur earlier.
pub fn initial_positions(w: &Word) -> Vec<usize> {
    let mut seen = vec![false; w.k + 1];
    let mut out = Vec::new();
    for (i, &a) in w.letters.iter().enumerate() {
        if !seen[a] {
            seen[a] = true;
            out.push(i + 1);
        }
    }
    out
}

/// Initial letters in order of first occurrence.
pub fn pi_of(w: &Word) -> Vec<usize> {
    initial_positions(w).into_iter().map(|i| w.letters[i - 1]).collect()
}

/// No subword `i ... j ... i` with `i != j`.
pub fn is_convex(w: &Word) -> bool {
    let mut closed = vec![false; w.k + 1];
    for i in 0..w.letters.len() {
        let a = w.letters[i];
        if closed[a] {
            return false;
        }
        if i + 1 < w.letters.len() && w.letters[i + 1] != a {
            closed[a] = true;
        }
    }
    true
}

pub fn convexify(w: &Word) -> Word {
    let mut count = vec![0usize; w.k + 1];
    for &a in &w.letters {
        count[a] += 1;
    }
    let letters = pi_of(w).into_iter().flat_map(|a| std::iter::repeat_n(a, count[a])).collect();
    Word { letters, k: w.k }
}

/// Positions of the instances of each letter, letters taken in first-occurrence order.
pub fn sigma_of(w: &Word) -> Perm {
    let mut images = Vec::with_capacity(w.n());
    for a in pi_of(w) {
        images.extend((1..=w.n()).filter(|&i| w.letters[i - 1] == a));
    }
    Perm { images }
}

/// A sequence of adjacent swaps carrying `conv(w)` to `w`.
///
/// Entry `i` swaps positions `i` and `i+1` of the current word. The swaps are
/// applied in order, there are `inv(sigma(w))` of them, and none of them
/// exchanges two initial positions of the word it is applied to.
pub fn sigma_factorization(w: &Word) -> Vec<usize> {
    let sigma = sigma_of(w);
    let target = sigma.inverse();
    let mut labels: Vec<usize> = (1..=w.n()).collect();
    let mut swaps = Vec::new();
    for p in 0..w.n() {
        let want = target.images[p];
        let mut q = labels.iter().position(|&l| l == want).expect("label present");
        while q > p {
            labels.swap(q - 1, q);
            swaps.push(q);
            q -= 1;
        }
    }
    swaps
}

/// Standardization relative to the alphabet bound `k`.
pub fn standardize(w: &Word) -> Perm {
    let mut seen = vec![false; w.k + 1];
    let mut next = w.k + 1;
    let mut images = Vec::with_capacity(w.n() + w.k);
    for &a in &w.letters {
        if seen[a] {
            images.push(next);
            next += 1;
        } else {
            seen[a] = true;
            images.push(a);
        }
    }
    images.extend((1..=w.k).filter(|&a| !seen[a]));
    Perm { images }
}

/// Number of stars in the pattern matrix of a word in `W_{n,k}`.
pub fn dimension_stat(w: &Word) -> Result<usize> {
    if !is_in_wnk(w) {
        return Err(Error::Word(format!("{w} is not in W_{{{},{}}}", w.n(), w.k)));
    }
    Ok(crate::cells::pattern_matrix(w).star_count())
}

/// The two closed forms for `dim(w)`:
/// `C(k,2) - inv(pi) + sum_{i not initial} (pi^{-1}_{w_i} - 1)` and
/// `-inv(pi) - n + sum_i pi^{-1}_{w_i}`.
pub fn dimension_closed_forms(w: &Word) -> Result<(i64, i64)> {
    if !is_in_wnk(w) {
        return Err(Error::Word(format!("{w} is not in W_{{{},{}}}", w.n(), w.k)));
    }
    let pi = pi_of(w);
    let k = w.k as i64;
    let mut pos = vec![0i64; w.k + 1];
    for (i, &a) in pi.iter().enumerate() {
        pos[a] = i as i64 + 1;
    }
    let inv = inversions(&pi) as i64;
    let initial = initial_positions(w);
    let tail: i64 = (1..=w.n()).filter(|i| !initial.contains(i)).map(|i| pos[w.letters[i - 1]] - 1).sum();
    let all: i64 = w.letters.iter().map(|&a| pos[a]).sum();
    Ok((k * (k - 1) / 2 - inv + tail, -inv - w.n() as i64 + all))
}

/// Append `j` (a letter already present).
pub fn star_growth(w: &Word, j: usize) -> Result<Word> {
    if j == 0 || j > w.k {
        return Err(Error::Param(format!("star growth at {j} outside [1,{}]", w.k)));
    }
    let mut letters = w.letters.clone();
    letters.push(j);
    Word::new(letters, w.k)
}

/// Increment every letter `>= j`, then append `j`.
pub fn bar_growth(w: &Word, j: usize) -> Result<Word> {
    if j == 0 || j > w.k + 1 {
        return Err(Error::Param(format!("bar growth at {j} outside [1,{}]", w.k + 1)));
    }
    let mut letters: Vec<usize> = w.letters.iter().map(|&a| if a >= j { a + 1 } else { a }).collect();
    letters.push(j);
    Word::new(letters, w.k + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Growth {
    Star(usize),
    Bar(usize),
}

/// Undo the last growth step of a Fubini word of length at least 2.
pub fn growth_preimage(w: &Word) -> Option<(Word, Growth)> {
    let n = w.n();
    if n < 2 || !is_in_wnk(w) {
        return None;
    }
    let last = w.letters[n - 1];
    let head = &w.letters[..n - 1];
    if head.contains(&last) {
        Some((Word { letters: head.to_vec(), k: w.k }, Growth::Star(last)))
    } else {
        let letters = head.iter().map(|&a| if a > last { a - 1 } else { a }).collect();
        Some((Word { letters, k: w.k - 1 }, Growth::Bar(last)))
    }
}

/// `sum_{w in W_{n,k}} q^{dim(w)}`
pub fn mahonian_distribution(n: usize, k: usize) -> Result<QPoly> {
    let mut counts: Vec<i64> = Vec::new();
    for w in enumerate_fubini(n, k)? {
        let d = dimension_stat(&w)?;
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    Ok(QPoly::from_coeffs(counts))
}

/// `w (*) 1`: append the last initial letter.
pub fn circledast(w: &Word) -> Word {
    let mut letters = w.letters.clone();
    if let Some(&a) = pi_of(w).last() {
        letters.push(a);
    }
    Word { letters, k: w.k }
}

/// `1 x w`: prepend `1` and shift every letter up, in `[k+1]^{n+1}`.
pub fn one_times(w: &Word) -> Word {
    let mut letters = Vec::with_capacity(w.n() + 1);
    letters.push(1);
    letters.extend(w.letters.iter().map(|a| a + 1));
    Word { letters, k: w.k + 1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, k: usize) -> Word {
        Word::parse(s, Some(k)).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("2113", 3).to_string(), "2113");
        let big = Word::parse("[1,10,2]", Some(10)).unwrap();
        assert_eq!(big.to_string(), "[1, 10, 2]");
        assert_eq!(serde_json::to_string(&big).unwrap(), "[1,10,2]");
        assert!(Word::parse("104", Some(3)).is_err());
        assert!(Word::parse("12", Some(1)).is_err());
    }

    #[test]
    fn fubini_membership() {
        assert!(is_fubini(&w("31231", 3)));
        assert!(!is_fubini(&w("113", 3)));
        assert!(is_fubini(&w("1", 1)));
        assert!(!is_in_wnk(&w("1121", 3)));
    }

    #[test]
    fn small_enumerations() {
        let got: Vec<String> = enumerate_fubini(3, 2).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(got, ["112", "121", "122", "211", "212", "221"]);
        let tail: Vec<String> = enumerate_tail(2, 2, 1).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(tail, ["12", "13", "14", "21", "31", "41"]);
        assert_eq!(enumerate_tail(3, 2, 1).unwrap().len(), 36);
        assert!(enumerate_fubini(2, 3).is_err());
    }

    #[test]
    fn statistics_from_worked_examples() {
        assert_eq!(initial_positions(&w("3343414", 4)), vec![1, 3, 6]);
        assert_eq!(initial_positions(&w("2331231", 3)), vec![1, 2, 4]);
        assert_eq!(pi_of(&w("331443123", 4)), vec![3, 1, 4, 2]);
        assert_eq!(convexify(&w("244234", 4)).to_string(), "224443");
        assert!(is_convex(&w("224443", 4)));
        assert!(!is_convex(&w("244234", 4)));
        assert_eq!(convexify(&w("215235", 5)).to_string(), "221553");
        assert_eq!(sigma_of(&w("215235", 5)).to_string(), "142365");
        assert_eq!(standardize(&w("215235", 5)).to_string(), "2156374");
        assert_eq!(standardize(&w("2331231", 3)).to_string(), "2341567");
    }

    #[test]
    fn growth_examples() {
        let base = w("21124231", 4);
        assert_eq!(star_growth(&base, 3).unwrap().to_string(), "211242313");
        assert_eq!(bar_growth(&base, 1).unwrap().to_string(), "322353421");
        assert!(star_growth(&base, 5).is_err());
        assert!(bar_growth(&base, 6).is_err());
    }

    #[test]
    fn embeddings() {
        assert_eq!(circledast(&w("3313424", 4)).to_string(), "33134242");
        assert_eq!(one_times(&w("3313424", 4)).to_string(), "14424535");
    }

    #[test]
    fn perm_basics() {
        let p = Perm::parse("231").unwrap();
        assert_eq!(p.inverse().to_string(), "312");
        assert_eq!(p.compose(&p.inverse()).unwrap(), Perm::identity(3));
        assert_eq!(p.inversions(), 2);
        assert_eq!(Perm::parse("2143").unwrap().cycle_type(), vec![2, 2]);
        assert!(Perm::new(vec![1, 1]).is_err());
        assert_eq!(Perm::all(3).len(), 6);
    }
}
