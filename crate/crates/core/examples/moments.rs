//! Vacuum moments of the q-semicircular family from operator matrices,
//! checked against pair partitions weighted by `q^crossings`.
//!
//! ```bash
//! cargo run -p qfock --example moments
//! ```

use qfock::combinatorics::{moment_oracle, moment_polynomial, q_catalan};
use qfock::ncalg::{evaluate, NCPoly};
use qfock::operators::vacuum_trace;
use qfock::qfock::{FockContext, FockParams};
use qfock::scalar::{format_rational, ratio};

fn main() -> qfock::Result<()> {
    for k in 1..=4 {
        println!("tau(X^{}) = {:?}", 2 * k, q_catalan(k)?.coeffs());
    }

    let q = ratio(-1, 2);
    let ctx = FockContext::new(FockParams::new(q.clone(), 2, 3)?)?;
    for word in [vec![1, 1], vec![1, 2, 2, 1], vec![1, 2, 1, 2], vec![1, 1, 2, 2, 1, 1]] {
        let op = evaluate(&NCPoly::monomial(&word), &ctx)?;
        let from_matrix = vacuum_trace(&op);
        assert_eq!(from_matrix, moment_oracle(&word, &q)?);
        println!(
            "tau{:?} = {:?} at q = -1/2 gives {}",
            word,
            moment_polynomial(&word)?.coeffs(),
            format_rational(&from_matrix)
        );
    }
    Ok(())
}
