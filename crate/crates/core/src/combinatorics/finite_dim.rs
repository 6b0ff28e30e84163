//! Finite-dimensional checks of the dimension/distance identity and of the
//! atom formula for the kernel of `D -> [X, D]`.
//!
//! The algebra is `M_k` with normalized trace `tau = Tr / k`, acting by left
//! multiplication on `H = L^2(M_k)^n`. An element of `H` is stored as a
//! `k x (k n)` real matrix (the `n` copies side by side) with norm
//! `||Y||^2 = (1/k) sum |Y_ab|^2`.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{int, Rational};

const TOL: f64 = 1e-10;

/// How a left-invariant subspace `K` of `H` is described.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubspaceSpec {
    /// `K = { Y : every row of Y lies in span(vectors) }`, vectors in `R^{kn}`.
    RowSpace { vectors: Vec<Vec<f64>> },
    /// `K = { Y : Y E = Y }` for an orthogonal projection `E` on `R^{kn}`
    /// (right multiplication, i.e. an element of the commutant).
    Projection { matrix: Vec<Vec<f64>> },
    /// An explicit spanning set of `k x kn` matrices; must be left-invariant.
    Span { elements: Vec<Vec<Vec<f64>>> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimDistance {
    pub k: usize,
    pub n: usize,
    /// `Tr(e_K)` with `Tr(I) = n`.
    pub dim: f64,
    pub dist_sq: f64,
    /// `n - dist(I, A(K))^2`
    pub n_minus_dist_sq: f64,
}

impl DimDistance {
    pub fn defect(&self) -> f64 {
        (self.dim - self.n_minus_dist_sq).abs()
    }
}

fn flatten(y: &DMatrix<f64>) -> DVector<f64> {
    // row-major, so index a * (k n) + c
    DVector::from_iterator(y.len(), y.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()))
}

fn orthonormal_basis(columns: &DMatrix<f64>) -> DMatrix<f64> {
    if columns.ncols() == 0 {
        return DMatrix::zeros(columns.nrows(), 0);
    }
    let svd = columns.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > TOL)
        .map(|(i, _)| i)
        .collect();
    DMatrix::from_fn(columns.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

fn check_vector(v: &[f64], len: usize, what: &str) -> Result<()> {
    if v.len() != len {
        return Err(Error::Validation(format!(
            "{what} has length {}, expected {len}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Validation(format!("{what} has non-finite entries")));
    }
    Ok(())
}

/// Spanning set of `K` as columns of flattened `k x kn` matrices.
fn spanning_columns(k: usize, n: usize, spec: &SubspaceSpec) -> Result<DMatrix<f64>> {
    let width = k * n;
    let row_space = |rows: Vec<DVector<f64>>| {
        let mut cols = Vec::new();
        for v in &rows {
            for a in 0..k {
                let mut y = DMatrix::zeros(k, width);
                y.row_mut(a).copy_from(&v.transpose());
                cols.push(flatten(&y));
            }
        }
        cols
    };
    let cols: Vec<DVector<f64>> = match spec {
        SubspaceSpec::RowSpace { vectors } => {
            for v in vectors {
                check_vector(v, width, "row-space vector")?;
            }
            row_space(vectors.iter().map(|v| DVector::from_column_slice(v)).collect())
        }
        SubspaceSpec::Projection { matrix } => {
            if matrix.len() != width {
                return Err(Error::Validation(format!(
                    "projection has {} rows, expected {width}",
                    matrix.len()
                )));
            }
            for row in matrix {
                check_vector(row, width, "projection row")?;
            }
            let e = DMatrix::from_fn(width, width, |r, c| matrix[r][c]);
            if (&e - e.transpose()).amax() > TOL || (&e * &e - &e).amax() > TOL {
                return Err(Error::Validation(
                    "matrix is not an orthogonal projection".into(),
                ));
            }
            row_space(e.row_iter().map(|r| r.transpose()).collect())
        }
        SubspaceSpec::Span { elements } => {
            let mut cols = Vec::with_capacity(elements.len());
            for el in elements {
                if el.len() != k {
                    return Err(Error::Validation(format!(
                        "span element has {} rows, expected {k}",
                        el.len()
                    )));
                }
                for row in el {
                    check_vector(row, width, "span element row")?;
                }
                cols.push(flatten(&DMatrix::from_fn(k, width, |r, c| el[r][c])));
            }
            cols
        }
    };
    let mut m = DMatrix::zeros(k * width, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    Ok(m)
}

fn residual_sq(q: &DMatrix<f64>, target: &DVector<f64>) -> f64 {
    let proj = q * (q.transpose() * target);
    (target - proj).norm_squared()
}

/// Computes `dim_N K` as the normalized trace of the projection onto `K`,
/// and independently `n - dist(I, A(K))^2` by least squares.
pub fn dim_distance_check(k: usize, n: usize, spec: &SubspaceSpec) -> Result<DimDistance> {
    if k == 0 || n == 0 {
        return Err(Error::Validation("k and n must be positive".into()));
    }
    let width = k * n;
    let span = spanning_columns(k, n, spec)?;
    let basis = orthonormal_basis(&span);

    // Left invariance: E_ab Y must stay in K for every matrix unit.
    if let SubspaceSpec::Span { .. } = spec {
        for j in 0..basis.ncols() {
            let y = DMatrix::from_fn(k, width, |r, c| basis[(r * width + c, j)]);
            for a in 0..k {
                for b in 0..k {
                    let mut moved = DMatrix::zeros(k, width);
                    moved.row_mut(a).copy_from(&y.row(b));
                    if residual_sq(&basis, &flatten(&moved)) > TOL {
                        return Err(Error::Validation(
                            "subspace is not invariant under the left action".into(),
                        ));
                    }
                }
            }
        }
    }

    // Route 1: Tr(e_K), normalized so the identity on H has trace n.
    let projection = &basis * basis.transpose();
    let dim = projection.trace() / (k * k) as f64;

    // Route 2: dist(I, A(K))^2 = sum_i dist(Omega e_i, K)^2, by least squares
    // against the raw spanning set.
    let mut dist_sq = 0.0;
    for i in 0..n {
        let mut target = DMatrix::zeros(k, width);
        for a in 0..k {
            target[(a, i * k + a)] = 1.0;
        }
        let t = flatten(&target);
        let r = if span.ncols() == 0 {
            t.norm_squared()
        } else {
            let svd = span.clone().svd(true, true);
            let c = svd
                .solve(&t, TOL)
                .map_err(|e| Error::Numeric(e.to_string()))?;
            (&t - &span * c).norm_squared()
        };
        dist_sq += r / k as f64;
    }
    Ok(DimDistance {
        k,
        n,
        dim,
        dist_sq,
        n_minus_dist_sq: n as f64 - dist_sq,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomKernel {
    pub multiplicities: Vec<usize>,
    pub kernel_dim: usize,
    /// `sum (m_i / k)^2`
    #[serde(with = "crate::scalar::serde_rational")]
    pub predicted: Rational,
    /// `dim ker(D -> [X, D]) / k^2`
    #[serde(with = "crate::scalar::serde_rational")]
    pub computed: Rational,
}

/// [`atom_kernel_dimension_with_values`] with eigenvalues `1, 2, 3, ...`.
pub fn atom_kernel_dimension(multiplicities: &[usize]) -> Result<AtomKernel> {
    let groups: Vec<(Rational, usize)> = multiplicities
        .iter()
        .enumerate()
        .map(|(i, &m)| (int(i as i64 + 1), m))
        .collect();
    atom_kernel_dimension_with_values(&groups)
}

/// `X` has eigenvalue `t` with multiplicity `m` for each `(t, m)`. The kernel
/// of `D -> XD - DX` is computed by exact rank of the `k^2 x k^2` commutation
/// matrix, after conjugating `X` by a fixed unipotent matrix so the map is
/// not already diagonal.
pub fn atom_kernel_dimension_with_values(groups: &[(Rational, usize)]) -> Result<AtomKernel> {
    if groups.is_empty() || groups.iter().any(|&(_, m)| m == 0) {
        return Err(Error::Validation(
            "multiplicities must be a non-empty list of positive integers".into(),
        ));
    }
    for (i, (t, _)) in groups.iter().enumerate() {
        if groups[..i].iter().any(|(s, _)| s == t) {
            return Err(Error::Validation(format!(
                "eigenvalue {t} repeated across groups"
            )));
        }
    }
    let multiplicities: Vec<usize> = groups.iter().map(|&(_, m)| m).collect();
    let k: usize = multiplicities.iter().sum();
    let diag: Vec<Rational> = groups
        .iter()
        .flat_map(|(t, m)| std::iter::repeat(t.clone()).take(*m))
        .collect();
    // S = upper triangular all-ones, S^{-1} = I - superdiagonal.
    let s = DenseMatrix::from_fn(k, k, |r, c| if r <= c { int(1) } else { int(0) });
    let s_inv = DenseMatrix::from_fn(k, k, |r, c| {
        if r == c {
            int(1)
        } else if c == r + 1 {
            int(-1)
        } else {
            int(0)
        }
    });
    let d = DenseMatrix::from_fn(k, k, |r, c| {
        if r == c {
            diag[r].clone()
        } else {
            Rational::zero()
        }
    });
    let x = s.mul(&d).mul(&s_inv);
    // vec(XD - DX) with D flattened row-major: (X (x) I - I (x) X^T)
    let kk = k * k;
    let map = DenseMatrix::from_fn(kk, kk, |row, col| {
        let (a, b) = (row / k, row % k);
        let (c, e) = (col / k, col % k);
        let mut v = Rational::zero();
        if b == e {
            v += &x[(a, c)];
        }
        if a == c {
            v -= &x[(e, b)];
        }
        v
    });
    let kernel_dim = kk - map.rank();
    let k2 = int((k * k) as i64);
    let predicted = multiplicities
        .iter()
        .map(|&m| int((m * m) as i64))
        .fold(Rational::zero(), |acc, v| acc + v)
        / &k2;
    let computed = int(kernel_dim as i64) / &k2;
    Ok(AtomKernel {
        multiplicities,
        kernel_dim,
        predicted,
        computed,
    })
}

/// All ordered multiplicity profiles (compositions) of `k`.
pub fn multiplicity_profiles(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << (k - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..k - 1 {
            if mask >> bit & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out
}

/// Seeded instances with `1 <= k <= k_max`, `1 <= n <= n_max`, cycling
/// through the three ways of describing `K`. Entries are small integers so
/// the row-space and span kinds are exactly representable.
pub fn random_instances(
    count: usize,
    k_max: usize,
    n_max: usize,
    seed: u64,
) -> Vec<(usize, usize, SubspaceSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let k = rng.gen_range(1..=k_max.max(1));
        let n = rng.gen_range(1..=n_max.max(1));
        let width = k * n;
        let vector = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..width).map(|_| rng.gen_range(-2i32..=2) as f64).collect()
        };
        let spec = match idx % 3 {
            0 => {
                let r = rng.gen_range(0..=width);
                SubspaceSpec::RowSpace {
                    vectors: (0..r).map(|_| vector(&mut rng)).collect(),
                }
            }
            1 => {
                let r = rng.gen_range(0..=width);
                let mut cols = DMatrix::zeros(width, r);
                for j in 0..r {
                    cols.set_column(j, &DVector::from_vec(vector(&mut rng)));
                }
                let q = orthonormal_basis(&cols);
                let e = &q * q.transpose();
                SubspaceSpec::Projection {
                    matrix: (0..width)
                        .map(|r| (0..width).map(|c| e[(r, c)]).collect())
                        .collect(),
                }
            }
            _ => {
                let m = rng.gen_range(0..=2);
                let mut elements = Vec::new();
                for _ in 0..m {
                    let rows: Vec<Vec<f64>> = (0..k).map(|_| vector(&mut rng)).collect();
                    // close under the matrix units so the span is left-invariant
                    for a in 0..k {
                        for b in 0..k {
                            let mut el = vec![vec![0.0; width]; k];
                            el[a] = rows[b].clone();
                            elements.push(el);
                        }
                    }
                }
                SubspaceSpec::Span { elements }
            }
        };
        out.push((k, n, spec));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn generated_instances_satisfy_identity() {
        let inst = random_instances(30, 3, 3, 11);
        assert_eq!(inst, random_instances(30, 3, 3, 11));
        for (k, n, spec) in &inst {
            let r = dim_distance_check(*k, *n, spec).unwrap();
            assert!(r.defect() < 1e-10, "{k} {n} {spec:?}: {r:?}");
        }
    }

    #[test]
    fn line_in_scalar_case() {
        let r = dim_distance_check(
            1,
            3,
            &SubspaceSpec::RowSpace {
                vectors: vec![vec![1.0, 0.0, 0.0]],
            },
        )
        .unwrap();
        assert!((r.dim - 1.0).abs() < 1e-12);
        assert!((r.dist_sq - 2.0).abs() < 1e-12);
    }

    #[test]
    fn full_first_copy() {
        let r = dim_distance_check(
            2,
            2,
            &SubspaceSpec::RowSpace {
                vectors: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
            },
        )
        .unwrap();
        assert!((r.dim - 1.0).abs() < 1e-12);
        assert!((r.n_minus_dist_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_subspace() {
        let r = dim_distance_check(2, 3, &SubspaceSpec::RowSpace { vectors: vec![] }).unwrap();
        assert_eq!(r.dim, 0.0);
        assert!((r.dist_sq - 3.0).abs() < 1e-12);
    }

    #[test]
    fn projection_spec_and_validation() {
        let e = vec![vec![0.5, 0.5], vec![0.5, 0.5]];
        let r = dim_distance_check(1, 2, &SubspaceSpec::Projection { matrix: e }).unwrap();
        assert!(r.defect() < 1e-12);
        assert!((r.dim - 1.0).abs() < 1e-12);
        let bad = vec![vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(matches!(
            dim_distance_check(1, 2, &SubspaceSpec::Projection { matrix: bad }),
            Err(Error::Validation(_))
        ));
        let short = SubspaceSpec::RowSpace {
            vectors: vec![vec![1.0]],
        };
        assert!(matches!(
            dim_distance_check(2, 2, &short),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn non_invariant_span_rejected() {
        // a single matrix with one nonzero row is not closed under E_21
        let el = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
        assert!(matches!(
            dim_distance_check(2, 1, &SubspaceSpec::Span { elements: vec![el] }),
            Err(Error::Validation(_))
        ));
        let ok = vec![
            vec![vec![1.0, 0.0], vec![0.0, 0.0]],
            vec![vec![0.0, 0.0], vec![1.0, 0.0]],
        ];
        let r = dim_distance_check(2, 1, &SubspaceSpec::Span { elements: ok }).unwrap();
        assert!(r.defect() < 1e-12);
        assert!((r.dim - 0.5).abs() < 1e-12);
    }

    #[test]
    fn atom_examples() {
        assert_eq!(atom_kernel_dimension(&[1, 1, 1]).unwrap().computed, ratio(1, 3));
        assert_eq!(atom_kernel_dimension(&[2, 1]).unwrap().computed, ratio(5, 9));
        let scalar = atom_kernel_dimension(&[4]).unwrap();
        assert_eq!(scalar.computed, int(1));
        assert_eq!(scalar.predicted, int(1));
    }

    #[test]
    fn atom_errors() {
        assert!(atom_kernel_dimension(&[]).is_err());
        assert!(atom_kernel_dimension(&[2, 0]).is_err());
        assert!(atom_kernel_dimension_with_values(&[(int(1), 1), (int(1), 2)]).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(multiplicity_profiles(3).len(), 4);
        assert!(multiplicity_profiles(5).iter().all(|p| p.iter().sum::<usize>() == 5));
        assert_eq!(multiplicity_profiles(5).len(), 16);
    }
}
