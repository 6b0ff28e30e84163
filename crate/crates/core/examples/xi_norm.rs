//! Hilbert-Schmidt norm of `P_0 - Xi_q` on the truncated space against the
//! geometric series `sum_{n >= 1} (q^2 N)^n = q^2 N / (1 - q^2 N)`.
//!
//! ```bash
//! cargo run -p qfock --example xi_norm
//! ```

use qfock::combinatorics::{xi_hs_closed_form, xi_hs_tail, xi_hs_truncated};
use qfock::operators::{hs_norm_sq, vacuum_projection, xi_q};
use qfock::qfock::{FockContext, FockParams};
use qfock::scalar::{format_rational, parse_rational, to_f64};

fn main() -> qfock::Result<()> {
    for (q, n) in [("1/2", 2), ("1/2", 3), ("-1/3", 3), ("9/10", 1), ("9/10", 2)] {
        let q = parse_rational(q)?;
        let ctx = FockContext::new(FockParams::new(q.clone(), n, 5)?)?;
        let hs = hs_norm_sq(&vacuum_projection(&ctx).sub(&xi_q(&ctx))?)?;
        assert_eq!(hs, xi_hs_truncated(&q, n, ctx.depth()));
        let limit = match xi_hs_closed_form(&q, n) {
            Ok(v) => {
                let tail = xi_hs_tail(&q, n, ctx.depth())?;
                format!("{} (tail {:.3e})", format_rational(&v), to_f64(&tail))
            }
            Err(_) => "diverges".into(),
        };
        println!(
            "q = {:>5}  N = {n}  ||P_0 - Xi_q||_HS^2 to degree 5 = {:<12} limit {limit}",
            format_rational(&q),
            format_rational(&hs)
        );
    }
    Ok(())
}
