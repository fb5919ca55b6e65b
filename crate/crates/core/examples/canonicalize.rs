//! Gaussian elimination of a 3x7 rational matrix to its pattern-matrix normal form.

use fubini::cells::pattern_matrix;
use fubini::fieldlab::{canonicalize_traced, parse_rational_matrix};

fn main() -> fubini::Result<()> {
    let m = parse_rational_matrix("0 0 0 2 0 0 3; 1 6 0 2 1 4 0; -1/3 0 -4 -8/3 -1/3 2/3 3")?;
    println!("input:\n{m}\n");
    let c = canonicalize_traced(&m)?;
    for (j, stage) in c.stages.iter().enumerate() {
        println!("after column {}:\n{stage}\n", j + 1);
    }
    println!("word {}\npattern:\n{}", c.word, pattern_matrix(&c.word));
    assert!(c.matrix.fits_pattern(&c.word));
    Ok(())
}
