//! The truncated q-Fock space: words, the degree-major basis and the
//! q-inner product.

mod gram;
mod positivity;

use std::fmt;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SparseMatrix, SparseVec};
use crate::ncalg::NCPoly;
use crate::scalar::{format_rational, serde_rational, Rational};

pub use gram::{
    gram_block_bruteforce, gram_block_polynomials, gram_block_recursive, inversion_number,
};
pub use positivity::{check_positivity, BlockPositivity, PositivityReport};

/// Truncation parameters of a q-Fock space over `H = C^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockParams {
    #[serde(with = "serde_rational")]
    pub q: Rational,
    #[serde(rename = "N")]
    pub n: usize,
    pub depth: usize,
}

impl FockParams {
    pub fn new(q: Rational, n: usize, depth: usize) -> Result<Self> {
        let p = Self { q, n, depth };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.abs() >= Rational::one() {
            return Err(Error::InvalidParams(format!(
                "|q| must be < 1, got q = {}",
                format_rational(&self.q)
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidParams("N must be at least 1".into()));
        }
        Ok(())
    }

    /// Reads `q`, `N` and `depth` from a `.toml` or `.json` file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let params: FockParams = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => {
                serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?
            }
            _ => toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?,
        };
        params.validate()?;
        Ok(params)
    }

    /// `sum_{n=0}^{depth} N^n`, or `None` on overflow.
    pub fn basis_size(&self) -> Option<usize> {
        (0..=self.depth).try_fold(0usize, |acc, d| {
            self.n
                .checked_pow(d as u32)
                .and_then(|p| acc.checked_add(p))
        })
    }
}

/// Desk-scale limits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub max_basis: usize,
    /// Largest degree for which the `n!`-term Gram oracle may run.
    pub max_bruteforce_degree: usize,
    /// Largest dense Gram block (`N^n` rows) that may be materialized.
    pub max_gram_block: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            // N = 4, d = 8
            max_basis: 87_381,
            max_bruteforce_degree: 7,
            max_gram_block: 1024,
        }
    }
}

/// A basis tensor `e_{i1} ⊗ ... ⊗ e_{in}`; letters are 1-based. The empty
/// word is the vacuum.
///
/// Words are ordered degree-major, then lexicographically, which is also the
/// basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn vacuum() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, i: usize) -> Word {
        let mut v = self.0.clone();
        v.push(i);
        Word(v)
    }

    /// The word with the letter at 0-based position `k` removed.
    pub fn omit(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Omega");
        }
        for l in &self.0 {
            write!(f, "e{l}")?;
        }
        Ok(())
    }
}

/// Enumerates all words of degree `<= depth` over `N` letters, degree-major
/// then lexicographic.
pub fn build_basis(params: &FockParams, caps: &Caps) -> Result<Vec<Word>> {
    params.validate()?;
    let size = params.basis_size().unwrap_or(usize::MAX);
    if size > caps.max_basis {
        return Err(Error::Capacity {
            what: "basis size",
            needed: size,
            cap: caps.max_basis,
        });
    }
    let mut words = Vec::with_capacity(size);
    words.push(Word::vacuum());
    let mut prev_start = 0;
    for _ in 1..=params.depth {
        let prev_end = words.len();
        for w in prev_start..prev_end {
            for i in 1..=params.n {
                let next = words[w].append(i);
                words.push(next);
            }
        }
        prev_start = prev_end;
    }
    Ok(words)
}

/// The ambient finite space: parameters, the word basis, and lazily built
/// per-degree Gram blocks (and their inverses).
#[derive(Debug)]
pub struct FockContext {
    params: FockParams,
    caps: Caps,
    words: Vec<Word>,
    offsets: Vec<usize>,
    gram: Vec<OnceLock<DenseMatrix>>,
    gram_inv: Vec<OnceLock<DenseMatrix>>,
    pub(crate) cache: ContextCache,
}

/// Derived objects that are expensive enough to build once per context.
#[derive(Debug, Default)]
pub(crate) struct ContextCache {
    pub(crate) semicirculars: OnceLock<Vec<SparseMatrix>>,
    pub(crate) wick_words: OnceLock<Vec<NCPoly>>,
    pub(crate) modular: OnceLock<SparseMatrix>,
    pub(crate) right_mult: OnceLock<Vec<SparseMatrix>>,
}

impl FockContext {
    pub fn new(params: FockParams) -> Result<Arc<Self>> {
        Self::with_caps(params, Caps::default())
    }

    pub fn with_caps(params: FockParams, caps: Caps) -> Result<Arc<Self>> {
        let words = build_basis(&params, &caps)?;
        let mut offsets = Vec::with_capacity(params.depth + 2);
        let mut acc = 0;
        for n in 0..=params.depth {
            offsets.push(acc);
            acc += params.n.pow(n as u32);
        }
        offsets.push(acc);
        let blocks = params.depth + 1;
        Ok(Arc::new(Self {
            params,
            caps,
            words,
            offsets,
            gram: (0..blocks).map(|_| OnceLock::new()).collect(),
            gram_inv: (0..blocks).map(|_| OnceLock::new()).collect(),
            cache: ContextCache::default(),
        }))
    }

    pub fn params(&self) -> &FockParams {
        &self.params
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn q(&self) -> &Rational {
        &self.params.q
    }

    pub fn generators(&self) -> usize {
        self.params.n
    }

    pub fn depth(&self) -> usize {
        self.params.depth
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    pub fn degree_of(&self, index: usize) -> usize {
        self.words[index].degree()
    }

    /// Basis indices of the degree-`n` words.
    pub fn degree_range(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn block_size(&self, n: usize) -> usize {
        self.offsets[n + 1] - self.offsets[n]
    }

    /// Index of `word`, or `None` if it is too long or uses a bad letter.
    pub fn index_of(&self, word: &Word) -> Option<usize> {
        let n = word.degree();
        if n > self.params.depth {
            return None;
        }
        let mut local = 0usize;
        for &l in word.letters() {
            if l == 0 || l > self.params.n {
                return None;
            }
            local = local * self.params.n + (l - 1);
        }
        Some(self.offsets[n] + local)
    }

    pub fn vacuum_index(&self) -> usize {
        0
    }

    pub fn basis_vector(&self, index: usize) -> SparseVec {
        SparseVec::from([(index, Rational::one())])
    }

    pub fn vacuum(&self) -> SparseVec {
        self.basis_vector(0)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.params.depth {
            return Err(Error::InvalidParams(format!(
                "degree {n} exceeds depth {}",
                self.params.depth
            )));
        }
        let size = self.block_size(n);
        if size > self.caps.max_gram_block {
            return Err(Error::Capacity {
                what: "dense Gram block",
                needed: size,
                cap: self.caps.max_gram_block,
            });
        }
        Ok(())
    }

    /// `G_n`, built by the recursive algorithm on first use.
    pub fn gram_block(&self, n: usize) -> Result<&DenseMatrix> {
        self.check_degree(n)?;
        if let Some(g) = self.gram[n].get() {
            return Ok(g);
        }
        let g = if n == 0 {
            DenseMatrix::identity(1)
        } else {
            let prev = self.gram_block(n - 1)?;
            gram_block_recursive(&self.params, n, prev)?
        };
        let _ = self.gram[n].set(g);
        Ok(self.gram[n].get().expect("just set"))
    }

    pub fn gram_inverse(&self, n: usize) -> Result<&DenseMatrix> {
        if let Some(g) = self.gram_inv[n].get() {
            return Ok(g);
        }
        let inv = self.gram_block(n)?.inverse()?;
        let _ = self.gram_inv[n].set(inv);
        Ok(self.gram_inv[n].get().expect("just set"))
    }

    /// Applies the block-diagonal Gram matrix (or its inverse) to `v`.
    pub(crate) fn apply_gram(&self, v: &SparseVec, inverse: bool) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for n in 0..=self.params.depth {
            let range = self.degree_range(n);
            let part: Vec<_> = v.range(range.clone()).collect();
            if part.is_empty() {
                continue;
            }
            let g = if inverse {
                self.gram_inverse(n)?
            } else {
                self.gram_block(n)?
            };
            for r in 0..g.rows() {
                let row = g.row(r);
                let mut acc = Rational::zero();
                for (&i, x) in &part {
                    let e = &row[i - range.start];
                    if !e.is_zero() {
                        acc += e * *x;
                    }
                }
                if !acc.is_zero() {
                    out.insert(range.start + r, acc);
                }
            }
        }
        Ok(out)
    }
}

/// `u^T G v` for coordinate vectors on the context basis.
pub fn q_inner(ctx: &FockContext, u: &SparseVec, v: &SparseVec) -> Result<Rational> {
    for x in [u, v] {
        if let Some((&last, _)) = x.last_key_value() {
            if last >= ctx.dim() {
                return Err(Error::Dimension {
                    expected: ctx.dim(),
                    got: last + 1,
                });
            }
        }
    }
    let mut acc = Rational::zero();
    for n in 0..=ctx.depth() {
        let range = ctx.degree_range(n);
        let us: Vec<_> = u.range(range.clone()).collect();
        if us.is_empty() {
            continue;
        }
        let vs: Vec<_> = v.range(range.clone()).collect();
        if vs.is_empty() {
            continue;
        }
        let g = ctx.gram_block(n)?;
        for (&a, x) in &us {
            for (&b, y) in &vs {
                let e = &g[(a - range.start, b - range.start)];
                if !e.is_zero() {
                    acc += e * *x * *y;
                }
            }
        }
    }
    Ok(acc)
}

/// Dense coordinate vector helper for callers that prefer slices.
pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
