//! Left and right creation/annihilation operators and their commutation
//! relations. Away from the truncation edge, `[l*_i, r_j] = delta_ij Xi_q`
//! and the left and right semicirculars commute.
//!
//! ```bash
//! cargo run -p qfock --example commutators
//! ```

use qfock::operators::{
    adjoint_q, annihilation, commutator, creation, right_creation, right_semicircular,
    semicircular, xi_q, LinOp,
};
use qfock::qfock::{FockContext, FockParams};
use qfock::scalar::{format_rational, ratio};

fn main() -> qfock::Result<()> {
    let ctx = FockContext::new(FockParams::new(ratio(1, 3), 2, 5)?)?;
    let d = ctx.depth();
    let xi = xi_q(&ctx);

    let l1 = creation(&ctx, 1)?;
    assert_eq!(adjoint_q(&l1)?, annihilation(&ctx, 1)?);

    for i in 1..=2 {
        for j in 1..=2 {
            let c = commutator(&annihilation(&ctx, i)?, &right_creation(&ctx, j)?)?;
            let expected = if i == j { xi.clone() } else { LinOp::zero(&ctx) };
            let interior = c.sub(&expected)?.on_degrees_below(d);
            let edge = c.sub(&expected)?;
            println!(
                "[l*_{i}, r_{j}] - delta Xi_q: interior {}  with top degree {}",
                format_rational(&interior.max_abs()),
                format_rational(&edge.max_abs())
            );

            let xy = commutator(&semicircular(&ctx, i)?, &right_semicircular(&ctx, j)?)?;
            println!(
                "[X_{i}, Y_{j}]: interior {}",
                format_rational(&xy.on_degrees_below(d - 1).max_abs())
            );
        }
    }
    Ok(())
}
