//! Matrix realizations of the creation, annihilation and right creation
//! operators, `P_n`, `Xi_q`, and the q-semicircular variables, together
//! with the q-adjoint, Hilbert–Schmidt norms, the vacuum trace, the modular
//! conjugation and the identification of Hilbert–Schmidt operators with the
//! tensor square.

mod hs;
mod modular;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::qfock::FockContext;
use crate::scalar::{format_rational, pow, Rational};

pub use hs::{hs_norm_sq, hs_to_tensor};
pub use modular::{modular_conjugation, right_multiplication};
pub(crate) use modular::right_multiplication_generators;

/// Which adjoint to take: the plain coordinate transpose, or the adjoint for
/// the q-inner product, `G^{-1} A^T G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointConvention {
    Coordinate,
    Q,
}

/// A linear operator on a truncated Fock space, in word coordinates.
#[derive(Clone)]
pub struct LinOp {
    ctx: Arc<FockContext>,
    matrix: SparseMatrix,
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinOp")
            .field("dim", &self.matrix.dim())
            .field("nnz", &self.matrix.nnz())
            .finish()
    }
}

impl PartialEq for LinOp {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.matrix == other.matrix
    }
}

fn same_context(a: &Arc<FockContext>, b: &Arc<FockContext>) -> bool {
    Arc::ptr_eq(a, b) || a.params() == b.params()
}

impl LinOp {
    pub fn new(ctx: Arc<FockContext>, matrix: SparseMatrix) -> Result<Self> {
        if matrix.dim() != ctx.dim() {
            return Err(Error::Dimension {
                expected: ctx.dim(),
                got: matrix.dim(),
            });
        }
        Ok(Self { ctx, matrix })
    }

    pub fn identity(ctx: &Arc<FockContext>) -> Self {
        Self {
            matrix: SparseMatrix::identity(ctx.dim()),
            ctx: ctx.clone(),
        }
    }

    pub fn zero(ctx: &Arc<FockContext>) -> Self {
        Self {
            matrix: SparseMatrix::zeros(ctx.dim()),
            ctx: ctx.clone(),
        }
    }

    pub fn context(&self) -> &Arc<FockContext> {
        &self.ctx
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix {
        self.matrix
    }

    fn with_matrix(&self, matrix: SparseMatrix) -> Self {
        Self {
            ctx: self.ctx.clone(),
            matrix,
        }
    }

    fn check(&self, other: &LinOp) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    pub fn compose(&self, rhs: &LinOp) -> Result<LinOp> {
        self.check(rhs)?;
        Ok(self.with_matrix(self.matrix.mul(&rhs.matrix)))
    }

    pub fn add(&self, rhs: &LinOp) -> Result<LinOp> {
        self.check(rhs)?;
        Ok(self.with_matrix(self.matrix.add(&rhs.matrix)))
    }

    pub fn sub(&self, rhs: &LinOp) -> Result<LinOp> {
        self.check(rhs)?;
        Ok(self.with_matrix(self.matrix.sub(&rhs.matrix)))
    }

    pub fn scale(&self, a: &Rational) -> LinOp {
        self.with_matrix(self.matrix.scale(a))
    }

    /// Keeps only entries whose row and column degrees satisfy `keep`.
    pub fn restrict_degrees(&self, keep: impl Fn(usize, usize) -> bool) -> LinOp {
        let ctx = &self.ctx;
        self.with_matrix(
            self.matrix
                .filter(|r, c| keep(ctx.degree_of(r), ctx.degree_of(c))),
        )
    }

    /// Restriction to inputs of degree `< bound` (outputs unrestricted).
    pub fn on_degrees_below(&self, bound: usize) -> LinOp {
        self.restrict_degrees(|_, c| c < bound)
    }

    pub fn max_abs(&self) -> Rational {
        self.matrix.max_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn adjoint(&self, convention: AdjointConvention) -> Result<LinOp> {
        match convention {
            AdjointConvention::Coordinate => Ok(self.with_matrix(self.matrix.transpose())),
            AdjointConvention::Q => adjoint_q(self),
        }
    }

    /// Coordinate CSV: `row_word,col_word,value` for non-zero entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,value\n");
        for (r, c, v) in self.matrix.entries() {
            out.push_str(&format!(
                "{},{},{}\n",
                self.ctx.word(r),
                self.ctx.word(c),
                format_rational(v)
            ));
        }
        out
    }
}

fn check_generator(ctx: &FockContext, i: usize) -> Result<()> {
    if i == 0 || i > ctx.generators() {
        return Err(Error::UnknownGenerator {
            index: i,
            max: ctx.generators(),
        });
    }
    Ok(())
}

fn build(ctx: &Arc<FockContext>, column: impl Fn(usize) -> SparseVec) -> LinOp {
    let cols = (0..ctx.dim()).map(column).collect();
    LinOp {
        matrix: SparseMatrix::from_columns(ctx.dim(), cols).expect("columns sized to basis"),
        ctx: ctx.clone(),
    }
}

/// `l(e_i)`: prepends `i`; top-degree words map to zero.
pub fn creation(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    check_generator(ctx, i)?;
    Ok(build(ctx, |c| {
        let w = ctx.word(c);
        match ctx.index_of(&w.prepend(i)) {
            Some(r) => SparseVec::from([(r, Rational::one())]),
            None => SparseVec::new(),
        }
    }))
}

/// `r(e_i)`: appends `i`; top-degree words map to zero.
pub fn right_creation(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    check_generator(ctx, i)?;
    Ok(build(ctx, |c| {
        let w = ctx.word(c);
        match ctx.index_of(&w.append(i)) {
            Some(r) => SparseVec::from([(r, Rational::one())]),
            None => SparseVec::new(),
        }
    }))
}

/// Removes each occurrence of `i`, weighted by `q^{weight(k, n)}` for the
/// 0-based position `k` in a word of degree `n`.
fn contraction(
    ctx: &Arc<FockContext>,
    i: usize,
    weight: impl Fn(usize, usize) -> usize,
) -> LinOp {
    let powers: Vec<Rational> = (0..=ctx.depth()).map(|k| pow(ctx.q(), k)).collect();
    build(ctx, |c| {
        let w = ctx.word(c);
        let mut col = SparseVec::new();
        for (k, &l) in w.letters().iter().enumerate() {
            if l != i {
                continue;
            }
            let r = ctx.index_of(&w.omit(k)).expect("shorter word is in the basis");
            crate::linalg::add_entry(&mut col, r, powers[weight(k, w.degree())].clone());
        }
        col
    })
}

/// `l*(e_i) h_1 ... h_n = sum_k q^{k-1} <h_k, e_i> h_1 .. ^h_k .. h_n`.
pub fn annihilation(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    check_generator(ctx, i)?;
    Ok(contraction(ctx, i, |k, _| k))
}

/// `r(e_i)^*`, the mirror image of [`annihilation`]: contracting the `k`-th
/// letter from the right costs `q^{n-k}`.
pub fn right_annihilation(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    check_generator(ctx, i)?;
    Ok(contraction(ctx, i, |k, n| n - 1 - k))
}

/// `G^{-1} A^T G`, the adjoint for the q-inner product. Only the inverse
/// Gram blocks of degrees where `A` has non-zero columns are needed.
pub fn adjoint_q(op: &LinOp) -> Result<LinOp> {
    let ctx = &op.ctx;
    let at = op.matrix.transpose();
    let mut cols = Vec::with_capacity(ctx.dim());
    for j in 0..ctx.dim() {
        let g_col = ctx.apply_gram(&ctx.basis_vector(j), false)?;
        let w = at.apply(&g_col);
        cols.push(ctx.apply_gram(&w, true)?);
    }
    LinOp::new(ctx.clone(), SparseMatrix::from_columns(ctx.dim(), cols)?)
}

/// `P_n`, the projection onto degree-`n` tensors.
pub fn projection_rank(ctx: &Arc<FockContext>, n: usize) -> Result<LinOp> {
    if n > ctx.depth() {
        return Err(Error::InvalidParams(format!(
            "degree {n} exceeds depth {}",
            ctx.depth()
        )));
    }
    let range = ctx.degree_range(n);
    Ok(build(ctx, |c| {
        if range.contains(&c) {
            SparseVec::from([(c, Rational::one())])
        } else {
            SparseVec::new()
        }
    }))
}

/// `Xi_q = sum_{n <= depth} q^n P_n`.
pub fn xi_q(ctx: &Arc<FockContext>) -> LinOp {
    let powers: Vec<Rational> = (0..=ctx.depth()).map(|k| pow(ctx.q(), k)).collect();
    build(ctx, |c| {
        let p = &powers[ctx.degree_of(c)];
        if p.is_zero() {
            SparseVec::new()
        } else {
            SparseVec::from([(c, p.clone())])
        }
    })
}

pub fn vacuum_projection(ctx: &Arc<FockContext>) -> LinOp {
    projection_rank(ctx, 0).expect("degree 0 always exists")
}

/// `X_i = l(e_i) + l*(e_i)`.
pub fn semicircular(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    creation(ctx, i)?.add(&annihilation(ctx, i)?)
}

/// `Y_i = r(e_i) + r(e_i)^*`.
pub fn right_semicircular(ctx: &Arc<FockContext>, i: usize) -> Result<LinOp> {
    right_creation(ctx, i)?.add(&right_annihilation(ctx, i)?)
}

/// Cached `X_1, .., X_N` matrices.
pub(crate) fn semicircular_matrices(ctx: &Arc<FockContext>) -> &[SparseMatrix] {
    ctx.cache.semicirculars.get_or_init(|| {
        (1..=ctx.generators())
            .map(|i| {
                semicircular(ctx, i)
                    .expect("generator in range")
                    .into_matrix()
            })
            .collect()
    })
}

/// `AB - BA`.
pub fn commutator(a: &LinOp, b: &LinOp) -> Result<LinOp> {
    a.compose(b)?.sub(&b.compose(a)?)
}

/// `<Omega, A Omega>_q`. The vacuum block of the Gram matrix is `[1]` and
/// orthogonal to the rest, so this is the `(Omega, Omega)` entry.
pub fn vacuum_trace(op: &LinOp) -> Rational {
    op.matrix.get(0, 0)
}
