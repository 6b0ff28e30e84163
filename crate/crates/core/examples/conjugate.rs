//! Conjugate variables. For the free difference quotient the conjugate is
//! `e_i` at `q = 0` and picks up higher-degree corrections otherwise. For the
//! dual-system derivation built from `r_j`, the vector
//! `(r_j - J r*_j J) Omega` solves the pairing, and the bound inputs follow.
//!
//! ```bash
//! cargo run -p qfock --example conjugate
//! ```

use qfock::conjugate::{
    delta_star_lower, fisher_bound, partial_conjugate, verify_dual_system, BoundInputs,
};
use qfock::ncalg::EtaVector;
use qfock::qfock::{FockContext, FockParams};
use qfock::scalar::{format_rational, ratio, to_f64};

fn main() -> qfock::Result<()> {
    for q in [ratio(0, 1), ratio(1, 2)] {
        let ctx = FockContext::new(FockParams::new(q.clone(), 2, 4)?)?;
        let sol = partial_conjugate(&EtaVector::unit(&ctx, 1)?, &ctx, 3)?;
        let coords: Vec<String> = sol
            .xi
            .iter()
            .map(|(&i, c)| format!("{} {}", format_rational(c), ctx.word(i)))
            .collect();
        println!(
            "q = {}: conjugate for d_1 up to degree 3 = {}  (residual {})",
            format_rational(&q),
            coords.join(" + "),
            format_rational(&sol.residual)
        );
    }

    let ctx = FockContext::new(FockParams::new(ratio(1, 2), 2, 4)?)?;
    for r in verify_dual_system(&ctx, ctx.depth() - 2)? {
        println!(
            "dual system j = {}: residual {} tail bound {}",
            r.j,
            format_rational(&r.residual_max),
            r.tail_bound.as_ref().map(format_rational).unwrap_or_default()
        );
    }

    for eps in [ratio(1, 10), ratio(1, 1)] {
        let b = BoundInputs::from_dual_system(&ctx, eps.clone())?;
        println!(
            "eps = {}: sum ||xi||^2 = {:.6}  dist^2 = {:.6}  bound {:.6}  n - dist^2 = {:.6}",
            format_rational(&eps),
            b.xi_norms_sq.iter().map(to_f64).sum::<f64>(),
            to_f64(&b.dist_sq),
            fisher_bound(&b)?,
            to_f64(&delta_star_lower(b.n, &b.dist_sq))
        );
    }
    Ok(())
}
