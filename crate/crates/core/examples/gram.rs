//! Gram blocks of the truncated q-Fock space: recursion against the
//! permutation-sum oracle, then positivity by eigenvalues.
//!
//! ```bash
//! cargo run -p qfock --example gram
//! ```

use qfock::qfock::{check_positivity, gram_block_bruteforce, FockContext, FockParams};
use qfock::scalar::{format_rational, parse_rational};

fn main() -> qfock::Result<()> {
    for q in ["0", "1/2", "-9/10"] {
        let params = FockParams::new(parse_rational(q)?, 2, 4)?;
        let ctx = FockContext::new(params.clone())?;

        for n in 0..=ctx.depth() {
            let oracle = gram_block_bruteforce(&params, n, ctx.caps().max_bruteforce_degree)?;
            assert_eq!(ctx.gram_block(n)?, &oracle);
        }

        let g2 = ctx.gram_block(2)?;
        println!("q = {q}, G_2 (words 11, 12, 21, 22):");
        for r in 0..g2.rows() {
            let row: Vec<String> = g2.row(r).iter().map(format_rational).collect();
            println!("  [{}]", row.join(", "));
        }

        let report = check_positivity(&ctx)?;
        for b in &report.blocks {
            println!(
                "  degree {} size {:>2}  eigenvalues in [{:.6}, {:.6}]",
                b.degree, b.size, b.min_eigenvalue, b.max_eigenvalue
            );
        }
        println!("  positive definite: {}\n", report.all_positive);
    }
    Ok(())
}
