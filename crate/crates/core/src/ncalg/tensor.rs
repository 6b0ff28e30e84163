use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseMatrix, SparseVec};
use crate::operators::LinOp;
use crate::qfock::FockContext;
use crate::scalar::Rational;

/// A vector in the tensor square `F (x) F` of the truncated Fock space,
/// stored as the coefficient matrix `M` of `sum M_uw e_u (x) e_w` (rows are
/// the left leg, columns the right leg).
#[derive(Clone)]
pub struct TensorVec {
    ctx: Arc<FockContext>,
    coeffs: SparseMatrix,
}

impl fmt::Debug for TensorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorVec")
            .field("nnz", &self.coeffs.nnz())
            .finish()
    }
}

impl PartialEq for TensorVec {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl TensorVec {
    pub fn new(ctx: Arc<FockContext>, coeffs: SparseMatrix) -> Result<Self> {
        if coeffs.dim() != ctx.dim() {
            return Err(Error::Dimension {
                expected: ctx.dim(),
                got: coeffs.dim(),
            });
        }
        Ok(Self { ctx, coeffs })
    }

    pub fn zero(ctx: &Arc<FockContext>) -> Self {
        Self {
            coeffs: SparseMatrix::zeros(ctx.dim()),
            ctx: ctx.clone(),
        }
    }

    /// `x (x) y`
    pub fn elementary(ctx: &Arc<FockContext>, x: &SparseVec, y: &SparseVec) -> Self {
        let mut t = Self::zero(ctx);
        t.add_elementary(&Rational::one(), x, y);
        t
    }

    /// `Omega (x) Omega`, the vector `1 (x) 1`.
    pub fn vacuum(ctx: &Arc<FockContext>) -> Self {
        Self::elementary(ctx, &ctx.vacuum(), &ctx.vacuum())
    }

    pub fn add_elementary(&mut self, c: &Rational, x: &SparseVec, y: &SparseVec) {
        for (&w, b) in y {
            self.coeffs.axpy_column(w, &(c * b), x);
        }
    }

    pub fn context(&self) -> &Arc<FockContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &SparseMatrix {
        &self.coeffs
    }

    pub fn get(&self, left: usize, right: usize) -> Rational {
        self.coeffs.get(left, right)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, rhs: &TensorVec) -> TensorVec {
        self.with(self.coeffs.add(&rhs.coeffs))
    }

    pub fn sub(&self, rhs: &TensorVec) -> TensorVec {
        self.with(self.coeffs.sub(&rhs.coeffs))
    }

    pub fn scale(&self, a: &Rational) -> TensorVec {
        self.with(self.coeffs.scale(a))
    }

    fn with(&self, coeffs: SparseMatrix) -> TensorVec {
        TensorVec {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// `(A (x) 1) t`
    pub fn left_act(&self, a: &LinOp) -> TensorVec {
        self.left_act_matrix(a.matrix())
    }

    pub(crate) fn left_act_matrix(&self, a: &SparseMatrix) -> TensorVec {
        self.with(a.mul(&self.coeffs))
    }

    /// `(1 (x) B) t`, i.e. `M B^T`.
    pub fn right_act(&self, b: &LinOp) -> TensorVec {
        self.right_act_matrix(b.matrix())
    }

    pub(crate) fn right_act_matrix(&self, b: &SparseMatrix) -> TensorVec {
        let dim = self.ctx.dim();
        let mut cols = vec![SparseVec::new(); dim];
        for w in 0..dim {
            let src = self.coeffs.column(w);
            if src.is_empty() {
                continue;
            }
            for (&w2, v) in b.column(w) {
                axpy(&mut cols[w2], v, src);
            }
        }
        self.with(SparseMatrix::from_columns(dim, cols).expect("same dimension"))
    }

    /// `<Omega (x) Omega, t>`. The vacuum is orthogonal to every other
    /// degree and has norm one, so this is the `(Omega, Omega)` coefficient.
    pub fn vacuum_pairing(&self) -> Rational {
        self.coeffs.get(0, 0)
    }

    /// `<s, t>` for the inner product with Gram matrix `G (x) G`,
    /// i.e. `Tr(M_s^T G M_t G)`.
    pub fn inner(&self, other: &TensorVec) -> Result<Rational> {
        let ctx = &self.ctx;
        let dim = ctx.dim();
        // G M_t: apply G to each column
        let gm: Vec<SparseVec> = (0..dim)
            .map(|w| ctx.apply_gram(other.coeffs.column(w), false))
            .collect::<Result<_>>()?;
        let gm = SparseMatrix::from_columns(dim, gm)?;
        // (G M_t) G = (G (G M_t)^T)^T
        let gmt = gm.transpose();
        let cols: Vec<SparseVec> = (0..dim)
            .map(|u| ctx.apply_gram(gmt.column(u), false))
            .collect::<Result<_>>()?;
        let gmg_t = SparseMatrix::from_columns(dim, cols)?;
        // sum_{u,w} M_s[u, w] * (G M_t G)[u, w]; gmg_t stores its transpose
        let mut acc = Rational::zero();
        for (u, w, v) in self.coeffs.entries() {
            let x = gmg_t.get(w, u);
            if !x.is_zero() {
                acc += v * x;
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> Result<Rational> {
        self.inner(self)
    }
}

/// `(eta_1, .., eta_N)`, one tensor per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaVector(Vec<TensorVec>);

impl EtaVector {
    pub fn new(ctx: &FockContext, parts: Vec<TensorVec>) -> Result<Self> {
        if parts.len() != ctx.generators() {
            return Err(Error::Dimension {
                expected: ctx.generators(),
                got: parts.len(),
            });
        }
        Ok(Self(parts))
    }

    pub fn zero(ctx: &Arc<FockContext>) -> Self {
        Self(vec![TensorVec::zero(ctx); ctx.generators()])
    }

    /// `I^j`: `1 (x) 1` in slot `j` (1-based), zero elsewhere.
    pub fn unit(ctx: &Arc<FockContext>, j: usize) -> Result<Self> {
        if j == 0 || j > ctx.generators() {
            return Err(Error::UnknownGenerator {
                index: j,
                max: ctx.generators(),
            });
        }
        let mut e = Self::zero(ctx);
        e.0[j - 1] = TensorVec::vacuum(ctx);
        Ok(e)
    }

    pub fn parts(&self) -> &[TensorVec] {
        &self.0
    }

    /// `eta_i`, 1-based.
    pub fn get(&self, i: usize) -> &TensorVec {
        &self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, rhs: &EtaVector) -> EtaVector {
        EtaVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, a: &Rational) -> EtaVector {
        EtaVector(self.0.iter().map(|t| t.scale(a)).collect())
    }
}
