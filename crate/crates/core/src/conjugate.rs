//! Partial conjugate variables on the truncated Fock space, the dual-system
//! construction `(D - J D^* J) Omega` with `D = r(e_j)`, and the Fisher
//! information / entropy-dimension bound evaluators.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::combinatorics::xi_hs_tail;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::ncalg::{deriv_eta, monomials, wick_vector, wick_words, EtaVector, NCPoly, TensorVec};
use crate::operators::{
    commutator, hs_to_tensor, modular_conjugation, right_annihilation, right_creation,
    semicircular,
};
use crate::qfock::{q_inner, FockContext, Word};
use crate::scalar::{int, to_f64, Rational};

/// Residuals at or below this count as "the pairing holds".
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ConjugateSolution {
    /// Candidate `J_eta Omega`, supported on degrees `<= degree_cap`.
    pub xi: SparseVec,
    /// Max over monomials `P` of degree `<= degree_cap` of
    /// `|<xi, P Omega>_q - <1 (x) 1, d^eta(P)>|`.
    pub residual: Rational,
    pub residual_argmax: Option<Word>,
    pub degree_cap: usize,
    /// Largest `lambda_max / lambda_min` over the Gram blocks used.
    pub condition_estimate: f64,
    pub exists: bool,
}

/// `<1 (x) 1, d^eta(P)>`.
pub fn pairing_rhs(eta: &EtaVector, p: &NCPoly, ctx: &Arc<FockContext>) -> Result<Rational> {
    Ok(deriv_eta(p, eta, ctx)?.vacuum_pairing())
}

/// Max defect `|<xi, P Omega>_q - <1 (x) 1, d^eta(P)>|` over all monomials of
/// degree `<= cap`, with the first monomial attaining it.
pub fn pairing_defect(
    xi: &SparseVec,
    eta: &EtaVector,
    ctx: &Arc<FockContext>,
    cap: usize,
) -> Result<(Rational, Option<Word>)> {
    check_cap(ctx, cap)?;
    let mut worst = Rational::zero();
    let mut argmax = None;
    for w in monomials(ctx.generators(), cap) {
        let p = NCPoly::term(w.clone(), int(1));
        let lhs = q_inner(ctx, xi, &wick_vector(&p, ctx))?;
        let d = (lhs - pairing_rhs(eta, &p, ctx)?).abs();
        if d > worst {
            worst = d;
            argmax = Some(w);
        }
    }
    Ok((worst, argmax))
}

fn check_cap(ctx: &FockContext, cap: usize) -> Result<()> {
    if cap > ctx.depth() {
        return Err(Error::InvalidParams(format!(
            "degree cap {cap} exceeds depth {}",
            ctx.depth()
        )));
    }
    Ok(())
}

fn condition_number(ctx: &FockContext, cap: usize) -> Result<f64> {
    let mut worst = 1.0f64;
    for n in 0..=cap {
        let eig = ctx
            .gram_block(n)?
            .to_f64()
            .try_symmetric_eigen(1e-15, 10_000)
            .ok_or_else(|| Error::Numeric(format!("eigen solver failed on block {n}")))?;
        let min = eig.eigenvalues.min();
        let max = eig.eigenvalues.max();
        worst = worst.max(if min > 0.0 { max / min } else { f64::INFINITY });
    }
    Ok(worst)
}

/// Solves `<xi, W_u Omega>_q = <1 (x) 1, d^eta(W_u)>` for every Wick word of
/// degree `<= degree_cap`. Since `W_u Omega = e_u` this is `G xi = rhs`,
/// one Gram block per degree.
pub fn partial_conjugate(
    eta: &EtaVector,
    ctx: &Arc<FockContext>,
    degree_cap: usize,
) -> Result<ConjugateSolution> {
    check_cap(ctx, degree_cap)?;
    let words = wick_words(ctx);
    let mut rhs = SparseVec::new();
    for u in 0..ctx.degree_range(degree_cap).end {
        let v = pairing_rhs(eta, &words[u], ctx)?;
        if !v.is_zero() {
            rhs.insert(u, v);
        }
    }
    let xi = ctx.apply_gram(&rhs, true)?;
    let condition_estimate = condition_number(ctx, degree_cap)?;
    let (residual, residual_argmax) = pairing_defect(&xi, eta, ctx, degree_cap)?;
    let exists = to_f64(&residual) <= RESIDUAL_TOLERANCE;
    Ok(ConjugateSolution {
        xi,
        residual,
        residual_argmax,
        degree_cap,
        condition_estimate,
        exists,
    })
}

fn check_generator(ctx: &FockContext, j: usize) -> Result<()> {
    if j == 0 || j > ctx.generators() {
        return Err(Error::UnknownGenerator {
            index: j,
            max: ctx.generators(),
        });
    }
    Ok(())
}

/// `(r(e_j) - J r(e_j)^* J) Omega`, with `r(e_j)^*` the q-adjoint of the
/// right creation operator.
pub fn dual_system_vector(ctx: &Arc<FockContext>, j: usize) -> Result<SparseVec> {
    check_generator(ctx, j)?;
    let omega = ctx.vacuum();
    let d_omega = right_creation(ctx, j)?.apply(&omega);
    let jj = modular_conjugation(ctx);
    let back = jj.apply(&right_annihilation(ctx, j)?.apply(&jj.apply(&omega)));
    let mut out = d_omega;
    crate::linalg::axpy(&mut out, &int(-1), &back);
    Ok(out)
}

/// `eta_i = Psi^{-1}([X_i, r(e_j)])` with the commutators restricted to
/// degrees `< depth`, where truncation leaves them untouched.
pub fn dual_system_eta(ctx: &Arc<FockContext>, j: usize) -> Result<EtaVector> {
    check_generator(ctx, j)?;
    let r = right_creation(ctx, j)?;
    let parts = (1..=ctx.generators())
        .map(|i| {
            let c = commutator(&semicircular(ctx, i)?, &r)?.on_degrees_below(ctx.depth());
            hs_to_tensor(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    EtaVector::new(ctx, parts)
}

#[derive(Clone, Debug)]
pub struct DualSystemReport {
    pub j: usize,
    pub degree_cap: usize,
    pub residual_max: Rational,
    pub residual_argmax: Option<Word>,
    /// `(q^2 N)^{depth-1} / (1 - q^2 N)`, absent when `q^2 N >= 1`.
    pub tail_bound: Option<Rational>,
}

/// For every `j`, checks the pairing of `(D - J D^* J) Omega` against
/// `d^eta` with `eta` from the commutators of `D = r(e_j)`.
pub fn verify_dual_system(ctx: &Arc<FockContext>, degree_cap: usize) -> Result<Vec<DualSystemReport>> {
    check_cap(ctx, degree_cap)?;
    let tail_bound = xi_hs_tail(ctx.q(), ctx.generators(), ctx.depth().saturating_sub(2)).ok();
    (1..=ctx.generators())
        .map(|j| {
            let xi = dual_system_vector(ctx, j)?;
            let eta = dual_system_eta(ctx, j)?;
            let (residual_max, residual_argmax) = pairing_defect(&xi, &eta, ctx, degree_cap)?;
            Ok(DualSystemReport {
                j,
                degree_cap,
                residual_max,
                residual_argmax,
                tail_bound: tail_bound.clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundInputs {
    pub n: usize,
    pub xi_norms_sq: Vec<Rational>,
    /// `||I - eta||^2`, summing squared tensor norms over all entries.
    pub dist_sq: Rational,
    pub epsilon: Rational,
}

impl BoundInputs {
    /// Inputs for the q-semicircular family with `D_j = r(e_j)`, computed on
    /// the truncated space.
    pub fn from_dual_system(ctx: &Arc<FockContext>, epsilon: Rational) -> Result<Self> {
        let n = ctx.generators();
        let vac = TensorVec::vacuum(ctx);
        let mut xi_norms_sq = Vec::with_capacity(n);
        let mut dist_sq = Rational::zero();
        for j in 1..=n {
            let xi = dual_system_vector(ctx, j)?;
            xi_norms_sq.push(q_inner(ctx, &xi, &xi)?);
            let eta = dual_system_eta(ctx, j)?;
            for i in 1..=n {
                let diff = if i == j {
                    vac.sub(eta.get(i))
                } else {
                    eta.get(i).scale(&int(-1))
                };
                dist_sq += diff.norm_sq()?;
            }
        }
        Ok(Self {
            n,
            xi_norms_sq,
            dist_sq,
            epsilon,
        })
    }
}

/// `sum ||xi_j||^2 + dist^2 / eps + (2 / sqrt eps) (sum ||xi_j||^2)^{1/2} dist`.
pub fn fisher_bound(b: &BoundInputs) -> Result<f64> {
    if !b.epsilon.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    if b.dist_sq.is_negative() || b.xi_norms_sq.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidParams("norms must be non-negative".into()));
    }
    let xi: Rational = b.xi_norms_sq.iter().fold(Rational::zero(), |a, x| a + x);
    let exact = &xi + &b.dist_sq / &b.epsilon;
    let eps = to_f64(&b.epsilon);
    let cross = 2.0 / eps.sqrt() * to_f64(&xi).sqrt() * to_f64(&b.dist_sq).sqrt();
    Ok(to_f64(&exact) + cross)
}

/// `n - ||I - eta||^2`.
pub fn delta_star_lower(n: usize, dist_sq: &Rational) -> Rational {
    int(n as i64) - dist_sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{delta_star_qbound, xi_hs_closed_form, xi_hs_truncated};
    use crate::operators::{hs_norm_sq, vacuum_projection, xi_q};
    use crate::qfock::FockParams;
    use crate::scalar::ratio;

    fn ctx(q: Rational, n: usize, d: usize) -> Arc<FockContext> {
        FockContext::new(FockParams::new(q, n, d).unwrap()).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = ctx(int(0), 1, 4);
        let eta = EtaVector::unit(&c, 1).unwrap();
        assert_eq!(pairing_rhs(&eta, &NCPoly::one(), &c).unwrap(), int(0));
        assert_eq!(pairing_rhs(&eta, &NCPoly::generator(1), &c).unwrap(), int(1));
        let x2 = NCPoly::generator(1).pow(2);
        assert_eq!(pairing_rhs(&eta, &x2, &c).unwrap(), int(0));
    }

    #[test]
    fn semicircular_conjugate_is_itself() {
        let c = ctx(int(0), 1, 5);
        let sol = partial_conjugate(&EtaVector::unit(&c, 1).unwrap(), &c, 4).unwrap();
        assert_eq!(sol.xi, c.basis_vector(1));
        assert!(sol.residual.is_zero());
        assert!(sol.exists);
        assert_eq!(sol.condition_estimate, 1.0);
    }

    #[test]
    fn zero_eta_gives_zero() {
        let c = ctx(ratio(1, 3), 2, 3);
        let sol = partial_conjugate(&EtaVector::zero(&c), &c, 3).unwrap();
        assert!(sol.xi.is_empty());
    }

    #[test]
    fn linear_in_eta() {
        let c = ctx(ratio(-1, 3), 2, 3);
        let mu = EtaVector::unit(&c, 1).unwrap();
        let kappa = dual_system_eta(&c, 2).unwrap();
        let a = partial_conjugate(&mu, &c, 3).unwrap().xi;
        let b = partial_conjugate(&kappa, &c, 3).unwrap().xi;
        let s = partial_conjugate(&mu.add(&kappa), &c, 3).unwrap().xi;
        let mut sum = a;
        crate::linalg::axpy(&mut sum, &int(1), &b);
        assert_eq!(s, sum);
    }

    #[test]
    fn cap_beyond_depth_is_rejected() {
        let c = ctx(int(0), 1, 3);
        assert!(partial_conjugate(&EtaVector::zero(&c), &c, 4).is_err());
    }

    #[test]
    fn dual_system_vector_is_first_degree() {
        for q in [int(0), ratio(1, 4), ratio(-3, 5)] {
            let c = ctx(q, 2, 4);
            for j in 1..=2 {
                assert_eq!(dual_system_vector(&c, j).unwrap(), c.basis_vector(j));
            }
        }
        assert!(dual_system_vector(&ctx(int(0), 2, 2), 3).is_err());
    }

    #[test]
    fn free_dual_system_has_no_defect() {
        let c = ctx(int(0), 2, 4);
        for r in verify_dual_system(&c, 3).unwrap() {
            assert!(r.residual_max.is_zero(), "j={}", r.j);
        }
    }

    #[test]
    fn interior_defect_vanishes_for_nonzero_q() {
        let c = ctx(ratio(1, 4), 2, 5);
        for r in verify_dual_system(&c, 3).unwrap() {
            assert!(r.residual_max.is_zero(), "j={}", r.j);
            assert!(r.tail_bound.unwrap().is_positive());
        }
    }

    #[test]
    fn zero_eta_is_detected() {
        let c = ctx(int(0), 2, 3);
        let xi = dual_system_vector(&c, 1).unwrap();
        let (d, w) = pairing_defect(&xi, &EtaVector::zero(&c), &c, 2).unwrap();
        assert_eq!(d, int(1));
        assert_eq!(w, Some(Word(vec![1])));
    }

    #[test]
    fn psi_inverse_is_isometric() {
        let c = ctx(ratio(1, 3), 2, 3);
        let t = vacuum_projection(&c).sub(&xi_q(&c)).unwrap().on_degrees_below(3);
        assert_eq!(hs_to_tensor(&t).unwrap().norm_sq().unwrap(), hs_norm_sq(&t).unwrap());
    }

    #[test]
    fn bound_inputs_match_closed_forms() {
        let q = ratio(1, 3);
        let c = ctx(q.clone(), 2, 4);
        let b = BoundInputs::from_dual_system(&c, int(1)).unwrap();
        assert_eq!(b.xi_norms_sq, vec![int(1), int(1)]);
        assert_eq!(b.dist_sq, int(2) * xi_hs_truncated(&q, 2, 3));
        let full = int(2) * xi_hs_closed_form(&q, 2).unwrap();
        assert_eq!(delta_star_lower(2, &full), delta_star_qbound(&q, 2).unwrap());
    }

    #[test]
    fn fisher_bound_examples() {
        let b = |xi: Vec<Rational>, d: Rational, e: Rational| BoundInputs {
            n: xi.len(),
            xi_norms_sq: xi,
            dist_sq: d,
            epsilon: e,
        };
        assert_eq!(fisher_bound(&b(vec![int(1)], int(4), int(1))).unwrap(), 9.0);
        assert_eq!(fisher_bound(&b(vec![int(2), int(1)], int(0), int(5))).unwrap(), 3.0);
        assert_eq!(fisher_bound(&b(vec![int(0)], int(3), ratio(1, 2))).unwrap(), 6.0);
        assert!(fisher_bound(&b(vec![int(1)], int(1), int(0))).is_err());
        assert!(fisher_bound(&b(vec![int(1)], int(1), int(-1))).is_err());
    }

    #[test]
    fn delta_star_lower_examples() {
        assert_eq!(delta_star_lower(3, &int(0)), int(3));
        assert_eq!(delta_star_lower(2, &ratio(1, 2)), ratio(3, 2));
    }
}
