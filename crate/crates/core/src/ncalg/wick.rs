use std::sync::Arc;

use num_traits::Zero;

use super::NCPoly;
use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseMatrix, SparseVec};
use crate::operators::{semicircular_matrices, LinOp};
use crate::qfock::FockContext;
use crate::scalar::{pow, Rational};

fn check_generators(p: &NCPoly, ctx: &FockContext) -> Result<()> {
    let max = p.max_generator();
    if max > ctx.generators() {
        return Err(Error::UnknownGenerator {
            index: max,
            max: ctx.generators(),
        });
    }
    Ok(())
}

/// Substitutes the truncated `X_i` matrices.
pub fn evaluate(p: &NCPoly, ctx: &Arc<FockContext>) -> Result<LinOp> {
    check_generators(p, ctx)?;
    let xs = semicircular_matrices(ctx);
    let mut acc = SparseMatrix::zeros(ctx.dim());
    for (w, c) in p.terms() {
        let mut m = SparseMatrix::identity(ctx.dim());
        for &l in w.letters().iter().rev() {
            m = xs[l - 1].mul(&m);
        }
        acc = acc.lin_comb(c, &m);
    }
    LinOp::new(ctx.clone(), acc)
}

/// `P Omega`, by applying the generators to the vacuum right to left.
/// Exact (untouched by truncation) when `deg P <= depth`.
pub fn wick_vector(p: &NCPoly, ctx: &Arc<FockContext>) -> SparseVec {
    let xs = semicircular_matrices(ctx);
    let mut out = SparseVec::new();
    for (w, c) in p.terms() {
        if w.letters().iter().any(|&l| l == 0 || l > ctx.generators()) {
            continue;
        }
        let mut v = ctx.vacuum();
        for &l in w.letters().iter().rev() {
            v = xs[l - 1].apply(&v);
        }
        axpy(&mut out, c, &v);
    }
    out
}

/// `W_u` for every basis word `u`, indexed like the basis, with
/// `W_u Omega = e_u`. Built from `W_{iu} = X_i W_u - sum_k q^{k-1} [u_k = i] W_{u \ k}`.
pub fn wick_words(ctx: &Arc<FockContext>) -> &[NCPoly] {
    ctx.cache.wick_words.get_or_init(|| {
        let powers: Vec<Rational> = (0..=ctx.depth()).map(|k| pow(ctx.q(), k)).collect();
        let mut out: Vec<NCPoly> = Vec::with_capacity(ctx.dim());
        out.push(NCPoly::one());
        for idx in 1..ctx.dim() {
            let w = ctx.word(idx);
            let i = w.letters()[0];
            let rest = w.omit(0);
            let rest_idx = ctx.index_of(&rest).expect("suffix is shorter");
            let mut p = NCPoly::generator(i).mul(&out[rest_idx]);
            for (k, &l) in rest.letters().iter().enumerate() {
                if l == i {
                    let j = ctx.index_of(&rest.omit(k)).expect("shorter word");
                    p = p.sub(&out[j].scale(&powers[k]));
                }
            }
            out.push(p);
        }
        out
    })
}

/// The polynomial `P` of degree `<= depth` with `P Omega = v`.
pub fn wick_inverse(v: &SparseVec, ctx: &Arc<FockContext>) -> Result<NCPoly> {
    let words = wick_words(ctx);
    let mut p = NCPoly::zero();
    for (&u, c) in v {
        if u >= words.len() {
            return Err(Error::Dimension {
                expected: words.len(),
                got: u + 1,
            });
        }
        if !c.is_zero() {
            p = p.add(&words[u].scale(c));
        }
    }
    Ok(p)
}
