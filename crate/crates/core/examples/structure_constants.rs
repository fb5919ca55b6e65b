//! Multiply two Schubert classes in R_{4,3} and expand the product in the Schubert basis.

use fubini::quotient::{Quotient, RingSpec};
use fubini::words::Word;

fn main() -> fubini::Result<()> {
    let q = Quotient::shared(RingSpec::r(4, 3)?)?;
    let u = Word::parse("1123", Some(3))?;
    let v = Word::parse("1232", Some(3))?;
    let e = q.structure_constants(&u, &v)?;
    println!("S_{u} * S_{v} =");
    for (w, c) in e.pairs() {
        println!("  {c:>3} * S_{w}");
    }
    println!("{}", serde_json::to_string(&e).expect("serializable"));
    Ok(())
}
