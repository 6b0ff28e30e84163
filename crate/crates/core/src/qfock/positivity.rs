use serde::Serialize;

use super::FockContext;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct BlockPositivity {
    pub degree: usize,
    pub size: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub blocks: Vec<BlockPositivity>,
    pub all_positive: bool,
}

impl PositivityReport {
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }
}

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// Smallest and largest eigenvalue of every Gram block, in floating point.
pub fn check_positivity(ctx: &FockContext) -> Result<PositivityReport> {
    let mut blocks = Vec::with_capacity(ctx.depth() + 1);
    for n in 0..=ctx.depth() {
        let g = ctx.gram_block(n)?.to_f64();
        let eig = g
            .try_symmetric_eigen(EIGEN_EPS, EIGEN_MAX_ITER)
            .ok_or_else(|| Error::Numeric(format!("eigen-solver did not converge on G_{n}")))?;
        let (lo, hi) = eig
            .eigenvalues
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        blocks.push(BlockPositivity {
            degree: n,
            size: ctx.block_size(n),
            min_eigenvalue: lo,
            max_eigenvalue: hi,
        });
    }
    let all_positive = blocks.iter().all(|b| b.min_eigenvalue > 0.0);
    Ok(PositivityReport {
        blocks,
        all_positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfock::FockParams;
    use crate::scalar::{int, ratio};

    #[test]
    fn free_case_is_identity() {
        let ctx = FockContext::new(FockParams::new(int(0), 3, 3).unwrap()).unwrap();
        let r = check_positivity(&ctx).unwrap();
        assert!(r.all_positive);
        for b in &r.blocks {
            assert!((b.min_eigenvalue - 1.0).abs() < 1e-14);
            assert!((b.max_eigenvalue - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn half_degree_two_min_is_one_minus_q() {
        let ctx = FockContext::new(FockParams::new(ratio(1, 2), 2, 2).unwrap()).unwrap();
        let r = check_positivity(&ctx).unwrap();
        assert!((r.blocks[2].min_eigenvalue - 0.5).abs() < 1e-12);
    }

    #[test]
    fn negative_q_stays_positive() {
        let ctx = FockContext::new(FockParams::new(ratio(-1, 2), 2, 4).unwrap()).unwrap();
        assert!(check_positivity(&ctx).unwrap().all_positive);
    }
}
