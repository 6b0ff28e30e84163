//! Noncommutative polynomials: parsing, Wick products, and the free
//! difference quotient with its Fock-space realization.
//!
//! ```bash
//! cargo run -p qfock --example polynomials
//! ```

use qfock::ncalg::{
    deriv_eta, free_difference_quotient, parse, wick_inverse, wick_vector, EtaVector,
};
use qfock::qfock::{FockContext, FockParams};
use qfock::scalar::ratio;

fn main() -> qfock::Result<()> {
    let p = parse("X1^2*X2 - 3/2*X2*X1 + 1")?;
    println!("P        = {p}");
    println!("P*       = {}", p.adjoint());
    println!("d_1 P    = {}", free_difference_quotient(&p, 1));
    println!("d_2 P    = {}", free_difference_quotient(&p, 2));

    let ctx = FockContext::new(FockParams::new(ratio(1, 4), 2, 3)?)?;
    let v = wick_vector(&p, &ctx);
    let back = wick_inverse(&v, &ctx)?;
    assert_eq!(back, p);
    println!("P Omega has {} nonzero coordinates", v.len());

    for i in 1..=2 {
        let eta = EtaVector::unit(&ctx, i)?;
        let t = deriv_eta(&p, &eta, &ctx)?;
        assert!(t == free_difference_quotient(&p, i).embed(&ctx));
        println!("d^(I^{i}) P matches d_{i} P on the Fock space");
    }
    Ok(())
}
