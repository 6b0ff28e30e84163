use std::sync::Arc;

use super::{semicircular_matrices, LinOp};
use crate::error::Result;
use crate::linalg::SparseMatrix;
use crate::ncalg::{evaluate, wick_vector, wick_words, NCPoly};
use crate::qfock::FockContext;

pub(crate) fn modular_matrix(ctx: &Arc<FockContext>) -> &SparseMatrix {
    ctx.cache.modular.get_or_init(|| {
        let cols = wick_words(ctx)
            .iter()
            .map(|w| wick_vector(&w.adjoint(), ctx))
            .collect();
        SparseMatrix::from_columns(ctx.dim(), cols).expect("wick vectors live in the basis")
    })
}

/// `J`, determined by `J(P Omega) = P^* Omega`. Every scalar here is real,
/// so the antilinear map is stored as a real matrix: column `u` is
/// `W_u^* Omega` for the Wick word `W_u` with `W_u Omega = e_u`.
pub fn modular_conjugation(ctx: &Arc<FockContext>) -> LinOp {
    LinOp::new(ctx.clone(), modular_matrix(ctx).clone()).expect("sized to context")
}

/// `J X_i J`, the right multiplication by `X_i`, for each generator.
pub(crate) fn right_multiplication_generators(ctx: &Arc<FockContext>) -> &[SparseMatrix] {
    ctx.cache.right_mult.get_or_init(|| {
        let j = modular_matrix(ctx);
        semicircular_matrices(ctx)
            .iter()
            .map(|x| j.mul(x).mul(j))
            .collect()
    })
}

/// `J Q^* J`: on `P Omega` it gives `P Q Omega`.
pub fn right_multiplication(q: &NCPoly, ctx: &Arc<FockContext>) -> Result<LinOp> {
    let j = modular_conjugation(ctx);
    j.compose(&evaluate(&q.adjoint(), ctx)?)?.compose(&j)
}
