use num_traits::Zero;

use super::{modular::modular_matrix, LinOp};
use crate::error::Result;
use crate::linalg::{axpy, DenseMatrix, SparseMatrix};
use crate::ncalg::TensorVec;
use crate::scalar::{int, Rational};

/// `Tr(A^* A)` with `A^* = G^{-1} A^T G`.
///
/// Block `(m, n)` of `A` (rows of degree `m`, columns of degree `n`)
/// contributes `Tr(G_n^{-1} A_mn^T G_m A_mn)`. Diagonal blocks that are a
/// scalar `c` times the identity contribute `c^2 N^n` without touching the
/// Gram matrices.
pub fn hs_norm_sq(op: &LinOp) -> Result<Rational> {
    let ctx = op.context();
    let a = op.matrix();
    let depth = ctx.depth();
    let mut total = Rational::zero();
    for n in 0..=depth {
        let cols = ctx.degree_range(n);
        for m in 0..=depth {
            let rows = ctx.degree_range(m);
            let block: Vec<(usize, usize, &Rational)> = cols
                .clone()
                .flat_map(|c| {
                    a.column(c)
                        .range(rows.clone())
                        .map(move |(&r, v)| (r - rows.start, c - cols.start, v))
                })
                .collect();
            if block.is_empty() {
                continue;
            }
            if m == n {
                if let Some(c) = scalar_identity(&block, cols.len()) {
                    total += &c * &c * int(cols.len() as i64);
                    continue;
                }
            }
            let mut dense = DenseMatrix::zeros(rows.len(), cols.len());
            for &(r, c, v) in &block {
                dense[(r, c)] = v.clone();
            }
            let gram_m = ctx.gram_block(m)?;
            let inner = dense.transpose().mul(&gram_m.mul(&dense));
            let g_inv = ctx.gram_inverse(n)?;
            for r in 0..cols.len() {
                for c in 0..cols.len() {
                    let x = &g_inv[(r, c)];
                    if !x.is_zero() {
                        total += x * &inner[(c, r)];
                    }
                }
            }
        }
    }
    Ok(total)
}

fn scalar_identity(block: &[(usize, usize, &Rational)], size: usize) -> Option<Rational> {
    if block.len() != size || block.iter().any(|&(r, c, _)| r != c) {
        return None;
    }
    let first = block[0].2;
    block.iter().all(|&(_, _, v)| v == first).then(|| first.clone())
}

/// `Psi^{-1}`: the rank-one operator `xi <eta, .>_q` goes to `xi (x) J eta`.
///
/// In coordinates `T = sum_{u,v} T_uv e_u <G^{-1} e_v, .>_q`, so the image
/// is `sum_{u,v} T_uv e_u (x) J G^{-1} e_v`.
pub fn hs_to_tensor(op: &LinOp) -> Result<TensorVec> {
    let ctx = op.context();
    let j = modular_matrix(ctx);
    let dim = ctx.dim();
    let mut cols = vec![crate::linalg::SparseVec::new(); dim];
    for v in 0..dim {
        let t_col = op.matrix().column(v);
        if t_col.is_empty() {
            continue;
        }
        let right = j.apply(&ctx.apply_gram(&ctx.basis_vector(v), true)?);
        for (&w, y) in &right {
            axpy(&mut cols[w], y, t_col);
        }
    }
    TensorVec::new(ctx.clone(), SparseMatrix::from_columns(dim, cols)?)
}
