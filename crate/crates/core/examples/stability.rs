//! Stability of word Schubert polynomials along w -> 1 x w and w -> w (*) 1,
//! and the heuristic Stanley truncations of a permutation.

use fubini::schubert::{circledast_check, dual_stable_check, stanley_stability};
use fubini::words::{circledast, Perm, Word};

fn main() -> fubini::Result<()> {
    let w = Word::parse("2123", Some(3))?;
    let r = dual_stable_check(&w, 2)?;
    for (v, rev) in r.words.iter().zip(&r.reversed) {
        println!("{v}: reversed S = {rev}");
    }
    println!("reversal-restriction holds: {}", r.holds);
    println!("{w} (*) 1 = {}, same Schubert polynomial: {}", circledast(&w), circledast_check(&w));
    let s = stanley_stability(&Perm::parse("2143")?, 1, Some(2));
    println!("stable part of S_(1^m x 2143), degree <= 2 (heuristic): {}", s.stable);
    Ok(())
}
