//! Schubert polynomials of Fubini words and of permutations, single and double.

use fubini::schubert::{double_schubert, schubert_perm, schubert_word};
use fubini::words::{convexify, sigma_of, standardize, Perm, Word};

fn main() -> fubini::Result<()> {
    for (s, k) in [("211", 2), ("2113", 3), ("2123", 3), ("2331231", 3)] {
        let w = Word::parse(s, Some(k))?;
        println!(
            "w = {w}: conv = {}, sigma = {}, std(conv) = {}",
            convexify(&w),
            sigma_of(&w),
            standardize(&convexify(&w))
        );
        println!("  S_w = {}", schubert_word(&w));
    }
    let w = Perm::parse("1432")?;
    println!("S_{w} = {}", schubert_perm(&w));
    let names: Vec<String> = (1..=4).map(|i| format!("x{i}")).chain((1..=4).map(|j| format!("y{j}"))).collect();
    println!("S_{w}(x; y) = {}", double_schubert(&w).display_with(&names));
    Ok(())
}
