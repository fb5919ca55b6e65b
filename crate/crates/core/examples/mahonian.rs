//! The distribution of dim over W_{n,k} against [k]!_q Stir_q(n,k).

use fubini::qseries::{q_factorial, q_stirling};
use fubini::words::{dimension_stat, enumerate_fubini, mahonian_distribution};

fn main() -> fubini::Result<()> {
    for w in enumerate_fubini(3, 2)? {
        println!("dim({w}) = {}", dimension_stat(&w)?);
    }
    for n in 1..=6 {
        for k in 1..=n {
            let counted = mahonian_distribution(n, k)?;
            let closed = &q_factorial(k) * &q_stirling(n, k);
            println!("n={n} k={k}: {counted}  [{}]", if counted == closed { "ok" } else { "MISMATCH" });
        }
    }
    Ok(())
}
