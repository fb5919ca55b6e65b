//! Orbit counts of the matrix spaces over small prime fields.

use fubini::fieldlab::{count_x, count_y, verify_free_action};

fn main() -> fubini::Result<()> {
    for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        for p in [2, 3] {
            let y = count_y(n, k, p)?;
            let x = count_x(n, k, p)?;
            println!(
                "n={n} k={k} p={p}: |Y| = {} (closed form {}), |X| = {} (closed form {})",
                y.enumerated, y.closed_form, x.enumerated, x.closed_form
            );
        }
    }
    let r = verify_free_action(3, 2, 2)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    Ok(())
}
