//! Graded Frobenius characteristics and graded traces of permutations on R_{n,k}.

use fubini::quotient::{Quotient, RingSpec};
use fubini::symfunc::{grfrob_r, hilbert_from_frobenius};
use fubini::words::Perm;

fn main() -> fubini::Result<()> {
    let (n, k) = (4, 2);
    let f = grfrob_r(n, k)?;
    println!("grFrob(R_{{{n},{k}}}) = {f}");
    let q = Quotient::shared(RingSpec::r(n, k)?)?;
    println!("Hilbert series {} (from Frobenius: {})", q.hilbert_series(), hilbert_from_frobenius(&f));
    for p in ["1234", "2134", "2314", "2143", "2341"] {
        let p = Perm::parse(p)?;
        println!("  trace of {p}: {}  character: {}", q.graded_trace(&p)?, f.character(&p.cycle_type())?);
    }
    Ok(())
}
