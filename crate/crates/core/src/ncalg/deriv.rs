use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{wick_vector, EtaVector, NCPoly, TensorVec};
use crate::error::{Error, Result};
use crate::operators::{right_multiplication_generators, semicircular_matrices};
use crate::qfock::{FockContext, Word};
use crate::scalar::{format_rational, Rational};

/// `d^eta(P)`: the derivation with `d(X_i) = eta_i` and `d(1) = 0`, into the
/// tensor square with left action `P . t = (P (x) 1) t` and right action
/// `t . Q = (1 (x) J Q^* J) t`.
///
/// For a monomial `X_{a_1} .. X_{a_m}` this is
/// `sum_k X_{a_1}..X_{a_{k-1}} . eta_{a_k} . X_{a_{k+1}}..X_{a_m}`.
pub fn deriv_eta(p: &NCPoly, eta: &EtaVector, ctx: &Arc<FockContext>) -> Result<TensorVec> {
    if eta.len() != ctx.generators() {
        return Err(Error::Dimension {
            expected: ctx.generators(),
            got: eta.len(),
        });
    }
    if p.max_generator() > ctx.generators() {
        return Err(Error::UnknownGenerator {
            index: p.max_generator(),
            max: ctx.generators(),
        });
    }
    let xs = semicircular_matrices(ctx);
    let rho = right_multiplication_generators(ctx);
    let mut acc = TensorVec::zero(ctx);
    for (w, c) in p.terms() {
        let letters = w.letters();
        for (k, &a) in letters.iter().enumerate() {
            let mut t = eta.get(a).clone();
            if t.is_zero() {
                continue;
            }
            for &l in letters[..k].iter().rev() {
                t = t.left_act_matrix(&xs[l - 1]);
            }
            for &l in &letters[k + 1..] {
                t = t.right_act_matrix(&rho[l - 1]);
            }
            acc = acc.add(&t.scale(c));
        }
    }
    Ok(acc)
}

/// A finite sum of elementary tensors `a (x) b` of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorPoly {
    pub fn add_term(&mut self, left: Word, right: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((left, right)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, left: &[usize], right: &[usize]) -> Rational {
        self.terms
            .get(&(Word(left.to_vec()), Word(right.to_vec())))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c a Omega (x) b Omega`.
    pub fn embed(&self, ctx: &Arc<FockContext>) -> TensorVec {
        let mut t = TensorVec::zero(ctx);
        for ((a, b), c) in &self.terms {
            let x = wick_vector(&NCPoly::term(a.clone(), Rational::one()), ctx);
            let y = wick_vector(&NCPoly::term(b.clone(), Rational::one()), ctx);
            t.add_elementary(c, &x, &y);
        }
        t
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            write!(
                f,
                "{} (x) {}",
                NCPoly::term(a.clone(), Rational::one()),
                NCPoly::term(b.clone(), Rational::one())
            )?;
        }
        Ok(())
    }
}

/// `d_i(P)`: splits every monomial at each occurrence of `X_i`.
pub fn free_difference_quotient(p: &NCPoly, i: usize) -> TensorPoly {
    let mut out = TensorPoly::default();
    for (w, c) in p.terms() {
        let letters = w.letters();
        for (k, &l) in letters.iter().enumerate() {
            if l == i {
                out.add_term(
                    Word(letters[..k].to_vec()),
                    Word(letters[k + 1..].to_vec()),
                    c.clone(),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse;
    use crate::qfock::FockParams;
    use crate::scalar::{int, ratio};

    fn ctx(q: Rational, n: usize, d: usize) -> Arc<FockContext> {
        FockContext::new(FockParams::new(q, n, d).unwrap()).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let c = ctx(ratio(1, 3), 2, 4);
        let eta = EtaVector::unit(&c, 1).unwrap();
        assert!(deriv_eta(&NCPoly::one(), &eta, &c).unwrap().is_zero());
        assert_eq!(
            deriv_eta(&NCPoly::generator(1), &eta, &c).unwrap(),
            TensorVec::vacuum(&c)
        );
        let d = deriv_eta(&parse("X1^2").unwrap(), &eta, &c).unwrap();
        let e1 = c.basis_vector(1);
        let expect = TensorVec::elementary(&c, &e1, &c.vacuum())
            .add(&TensorVec::elementary(&c, &c.vacuum(), &e1));
        assert_eq!(d, expect);
    }

    #[test]
    fn difference_quotient_examples() {
        let d = free_difference_quotient(&NCPoly::generator(1), 1);
        assert_eq!(d.coeff(&[], &[]), int(1));
        assert_eq!(d.len(), 1);
        let d = free_difference_quotient(&parse("X1*X2").unwrap(), 1);
        assert_eq!(d.coeff(&[], &[2]), int(1));
        assert_eq!(d.len(), 1);
        let d = free_difference_quotient(&parse("X1^2").unwrap(), 1);
        assert_eq!(d.to_string(), "1 (x) X1 + X1 (x) 1");
        assert!(free_difference_quotient(&parse("X2").unwrap(), 1).is_empty());
    }

    #[test]
    fn difference_quotient_agrees_with_derivation() {
        let c = ctx(ratio(-2, 5), 2, 4);
        let p = parse("X1*X2*X1 - 2*X2*X1 + X1^3 + 5").unwrap();
        for i in 1..=2 {
            let eta = EtaVector::unit(&c, i).unwrap();
            assert_eq!(
                deriv_eta(&p, &eta, &c).unwrap(),
                free_difference_quotient(&p, i).embed(&c)
            );
        }
    }
}
