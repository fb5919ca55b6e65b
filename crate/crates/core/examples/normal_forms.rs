//! Standard monomial bases, normal forms and Hilbert series of R, R_s and T,
//! with the rewriting normal form cross-checked against a Buchberger basis.

use fubini::groebner::{groebner_oracle, RatPoly};
use fubini::polyring::MultiPoly;
use fubini::quotient::{Quotient, RingSpec};

fn main() -> fubini::Result<()> {
    for spec in [RingSpec::r(3, 2)?, RingSpec::rs(4, 3, 2)?, RingSpec::t(3, 2, 1)?] {
        let q = Quotient::new(spec)?;
        println!("{spec}: {} standard monomials, Hilbert series {}", q.basis().len(), q.hilbert_series());
        let f = MultiPoly::parse("x1^3*x2 + 2*x1*x2^2 - x3^2 + 5", spec.n())?;
        let nf = q.normal_form(&f)?;
        let oracle = groebner_oracle(spec)?.normal_form(&f)?;
        println!("  NF({f}) = {nf}  (Buchberger agrees: {})", oracle == RatPoly::from_int(&nf));
    }
    Ok(())
}
