//! Pattern matrices, omega pattern matrices, rank functions and cell dimensions.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{initial_positions, inversions, is_convex, pi_of, standardize, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Star,
    Diamond,
}

impl Entry {
    pub fn ascii(self) -> char {
        match self {
            Entry::Zero => '.',
            Entry::One => '1',
            Entry::Star => '*',
            Entry::Diamond => 'o',
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Entry::Zero => s.serialize_u8(0),
            Entry::One => s.serialize_u8(1),
            Entry::Star => s.serialize_str("*"),
            Entry::Diamond => s.serialize_str("o"),
        }
    }
}

/// A `k x n` grid of pattern symbols; row `i` corresponds to letter `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMatrix {
    rows: Vec<Vec<Entry>>,
}

impl PatternMatrix {
    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.rows[i - 1][j - 1]
    }

    pub fn count(&self, e: Entry) -> usize {
        self.rows.iter().flatten().filter(|&&x| x == e).count()
    }

    pub fn star_count(&self) -> usize {
        self.count(Entry::Star)
    }

    /// Parse rows of `.`/`0`, `1`, `*`, `o` separated by `/` or newlines.
    pub fn parse_ascii(s: &str) -> Result<PatternMatrix> {
        let rows = s
            .split(['/', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '.' | '0' => Ok(Entry::Zero),
                        '1' => Ok(Entry::One),
                        '*' => Ok(Entry::Star),
                        'o' => Ok(Entry::Diamond),
                        _ => Err(Error::Parse(format!("pattern symbol {c:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PatternMatrix { rows })
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|e| e.ascii().to_string()).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn first_occurrences(w: &Word) -> Vec<Option<usize>> {
    let mut first = vec![None; w.k() + 1];
    for (j, &a) in w.letters().iter().enumerate() {
        first[a].get_or_insert(j + 1);
    }
    first
}

/// `PM(w)` for any `w in [k]^n`.
pub fn pattern_matrix(w: &Word) -> PatternMatrix {
    let (n, k) = (w.n(), w.k());
    let first = first_occurrences(w);
    let mut rows = vec![vec![Entry::Zero; n]; k];
    for j in 1..=n {
        let a = w.letters()[j - 1];
        let initial = first[a] == Some(j);
        for i in 1..=k {
            rows[i - 1][j - 1] = if i == a {
                Entry::One
            } else {
                let star = match first[i] {
                    None => false,
                    Some(fi) if initial => i < a && fi < j,
                    Some(fi) => fi < first[a].expect("letter occurs"),
                };
                if star {
                    Entry::Star
                } else {
                    Entry::Zero
                }
            };
        }
    }
    PatternMatrix { rows }
}

/// `OPM(w)` for a convex word.
pub fn omega_pattern_matrix(w: &Word) -> Result<PatternMatrix> {
    if !is_convex(w) {
        return Err(Error::Word(format!("{w} is not convex")));
    }
    let (n, k) = (w.n(), w.k());
    let first = first_occurrences(w);
    let mut rows = vec![vec![Entry::Zero; n]; k];
    for j in 1..=n {
        let a = w.letters()[j - 1];
        if first[a] == Some(j) {
            rows[a - 1][j - 1] = Entry::Diamond;
            for i in 1..a {
                if first[i].is_some_and(|fi| fi < j) {
                    rows[i - 1][j - 1] = Entry::Star;
                }
            }
        } else {
            for &b in &w.letters()[..j] {
                rows[b - 1][j - 1] = Entry::Diamond;
            }
        }
    }
    Ok(PatternMatrix { rows })
}

/// Free below-diagonal positions `(i, j)` of `U(w)`: `i > j` with letter `j` in `w`.
pub fn u_group_star_positions(w: &Word) -> Vec<(usize, usize)> {
    let first = first_occurrences(w);
    let mut out = Vec::new();
    for i in 1..=w.k() {
        for j in 1..i {
            if first[j].is_some() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Ranks of the upper-left submatrices of the 0/1 matrix of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankFunction {
    values: Vec<Vec<usize>>,
}

impl RankFunction {
    /// `r(i, j)` for `1 <= i <= k`, `1 <= j <= n`.
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.values[i - 1][j - 1]
    }

    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }

    /// Pointwise `self <= other`.
    pub fn leq(&self, other: &RankFunction) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y))
    }
}

pub fn rank_function(w: &Word) -> RankFunction {
    let (n, k) = (w.n(), w.k());
    let mut values = vec![vec![0; n]; k];
    for (i, row) in values.iter_mut().enumerate() {
        let mut seen = vec![false; k + 1];
        let mut r = 0;
        for (j, cell) in row.iter_mut().enumerate() {
            let a = w.letters()[j];
            if a <= i + 1 && !seen[a] {
                seen[a] = true;
                r += 1;
            }
            *cell = r;
        }
    }
    RankFunction { values }
}

/// `v <= w` in the closure order on convex words: `r(v) <= r(w)` pointwise.
pub fn closure_leq_convex(v: &Word, w: &Word) -> Result<bool> {
    for x in [v, w] {
        if !is_convex(x) {
            return Err(Error::Word(format!("{x} is not convex")));
        }
    }
    if (v.n(), v.k()) != (w.n(), w.k()) {
        return Err(Error::Param("closure order needs words in the same [k]^n".into()));
    }
    Ok(rank_function(v).leq(&rank_function(w)))
}

/// `dim C_w = dim U(w) + dim(w)`, with `pi^{-1}_{w_i}` read as the position of `w_i` in `pi`.
pub fn cell_dimension(w: &Word) -> usize {
    let pi = pi_of(w);
    let k = w.k();
    let mut pos = vec![0usize; k + 1];
    for (i, &a) in pi.iter().enumerate() {
        pos[a] = i + 1;
    }
    let u: usize = pi.iter().map(|&a| k - a).sum();
    let s: usize = w.letters().iter().map(|&a| pos[a]).sum();
    u + s - inversions(&pi) - w.n()
}

/// `n(k-1) - dim C_w`
pub fn cell_codimension(w: &Word) -> usize {
    w.n() * (w.k() - 1) - cell_dimension(w)
}

/// `inv(std(w))` for convex `w`.
pub fn convex_codimension(w: &Word) -> Result<usize> {
    if !is_convex(w) {
        return Err(Error::Word(format!("{w} is not convex")));
    }
    Ok(standardize(w).inversions())
}

/// Words `v` with `in(v) = in(w)` agreeing with `w` on initial positions; `w` convex.
pub fn omega_cells(w: &Word) -> Result<Vec<Word>> {
    if !is_convex(w) {
        return Err(Error::Word(format!("{w} is not convex")));
    }
    let initial = initial_positions(w);
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(w.n());
    for j in 1..=w.n() {
        if initial.contains(&j) {
            choices.push(vec![w.letters()[j - 1]]);
        } else {
            let mut seen: Vec<usize> = w.letters()[..j].to_vec();
            seen.sort_unstable();
            seen.dedup();
            choices.push(seen);
        }
    }
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                c.iter().map(move |&a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|letters| Word::new(letters, w.k())).collect()
}

/// Reference Hasse diagrams of the Bruhat order on `W_{3,2}` and `W_{4,3}`,
/// transcribed as static data. They are not computed by this crate.
pub mod fixtures {
    /// `(lower, upper)` cover pairs of `W_{3,2}`.
    pub const W32_COVERS: &[(&str, &str)] = &[
        ("122", "121"),
        ("122", "211"),
        ("122", "112"),
        ("121", "212"),
        ("211", "212"),
        ("211", "221"),
        ("112", "221"),
    ];

    /// Rank levels of `W_{4,3}`, bottom first.
    pub const W43_LEVELS: &[&[&str]] = &[
        &["1233"],
        &["1322", "2133", "1232", "1223"],
        &["2311", "3122", "1323", "2131", "1231", "1332", "2113", "1213", "1123"],
        &["3211", "2313", "3121", "1321", "2132", "2331", "3112", "1312", "2123", "1132", "2213"],
        &["3212", "2312", "3123", "3221", "2321", "3132", "2231", "3312"],
        &["3213", "3231", "3321"],
    ];

    /// `(lower, upper)` cover pairs of `W_{4,3}`.
    pub const W43_COVERS: &[(&str, &str)] = &[
        ("1233", "1322"), ("1233", "2133"), ("1233", "1232"), ("1233", "1223"),
        ("1322", "2311"), ("1322", "3122"), ("1322", "1323"), ("1322", "1332"), ("1322", "1123"),
        ("2133", "2311"), ("2133", "3122"), ("2133", "2131"), ("2133", "2113"),
        ("1232", "1323"), ("1232", "2131"), ("1232", "1231"), ("1232", "1123"),
        ("1223", "1332"), ("1223", "2113"), ("1223", "1213"), ("1223", "1123"),
        ("2311", "3211"), ("2311", "2313"), ("2311", "2331"), ("2311", "2213"),
        ("3122", "3211"), ("3122", "3121"), ("3122", "3112"),
        ("1323", "2313"), ("1323", "3121"), ("1323", "1321"),
        ("2131", "2313"), ("2131", "3121"), ("2131", "2132"), ("2131", "2213"),
        ("1231", "1321"), ("1231", "2132"),
        ("1332", "2331"), ("1332", "3112"), ("1332", "1312"), ("1332", "1132"),
        ("2113", "2331"), ("2113", "3112"), ("2113", "2123"), ("2113", "2213"),
        ("1213", "1312"), ("1213", "2123"),
        ("1123", "1132"), ("1123", "2213"),
        ("3211", "3212"), ("3211", "3221"), ("3211", "3312"),
        ("2313", "3212"), ("2313", "2312"),
        ("3121", "3212"), ("3121", "3123"), ("3121", "3312"),
        ("1321", "2312"), ("1321", "3123"),
        ("2132", "2312"), ("2132", "3123"),
        ("2331", "3221"), ("2331", "2321"), ("2331", "2231"),
        ("3112", "3221"), ("3112", "3132"), ("3112", "3312"),
        ("1312", "2321"), ("1312", "3132"),
        ("2123", "2321"), ("2123", "3132"),
        ("1132", "2231"), ("1132", "3312"),
        ("2213", "2231"), ("2213", "3312"),
        ("3212", "3213"), ("2312", "3213"), ("3123", "3213"),
        ("3221", "3231"), ("3221", "3321"),
        ("2321", "3231"), ("3132", "3231"),
        ("2231", "3321"), ("3312", "3321"),
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, k: usize) -> Word {
        Word::parse(s, Some(k)).unwrap()
    }

    #[test]
    fn pattern_matrix_of_worked_example() {
        let pm = pattern_matrix(&w("2331231", 3));
        assert_eq!(pm, PatternMatrix::parse_ascii("...1..1 / 1**.1** / .11..1*").unwrap());
        assert_eq!(pm.star_count(), 5);
        assert_eq!(pm.to_string(), ". . . 1 . . 1\n1 * * . 1 * *\n. 1 1 . . 1 *");
    }

    #[test]
    fn omega_pattern_matrices() {
        let opm = omega_pattern_matrix(&w("44111533", 5)).unwrap();
        let expected = "..ooo**o / ........ / ......oo / oo.oo*.o / .....o.o";
        assert_eq!(opm, PatternMatrix::parse_ascii(expected).unwrap());
        let opm = omega_pattern_matrix(&w("441122", 4)).unwrap();
        assert_eq!(opm, PatternMatrix::parse_ascii("..oo*o / ....oo / ...... / oo.o.o").unwrap());
        assert!(omega_pattern_matrix(&w("121", 2)).is_err());
    }

    #[test]
    fn u_group_positions() {
        let got = u_group_star_positions(&w("44111533", 5));
        let mut expected = vec![(2, 1), (3, 1), (4, 1), (5, 1), (4, 3), (5, 3), (5, 4)];
        expected.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, expected);
        assert_eq!(u_group_star_positions(&w("111", 3)), vec![(2, 1), (3, 1)]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_function(&w("12", 2)).at(2, 2), 2);
        assert_eq!(rank_function(&w("11", 2)).at(2, 2), 1);
    }

    #[test]
    fn omega_cells_example() {
        let mut got: Vec<String> = omega_cells(&w("441122", 4)).unwrap().iter().map(|v| v.to_string()).collect();
        got.sort();
        let mut expected = vec!["441122", "441422", "441121", "441421", "441124", "441424"];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn cell_dimension_examples() {
        assert_eq!(cell_dimension(&w("2331231", 3)), 8);
        assert_eq!(cell_codimension(&w("2331231", 3)), 6);
        assert_eq!(cell_codimension(&w("1234", 4)), 0);
    }
}
