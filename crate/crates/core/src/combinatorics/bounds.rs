//! Closed forms for the Hilbert–Schmidt norm of `P_0 - Xi_q` and the
//! resulting free-entropy-dimension bound for q-semicircular families.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, pow, Rational};

/// `q^2 N`
pub fn hs_ratio(q: &Rational, n: usize) -> Rational {
    q * q * int(n as i64)
}

fn require_convergent(q: &Rational, n: usize) -> Result<Rational> {
    let r = hs_ratio(q, n);
    if r >= Rational::one() {
        return Err(Error::Divergent(format_rational(&r)));
    }
    Ok(r)
}

/// `||P_0 - Xi_q||_HS^2 = q^2 N / (1 - q^2 N)`; divergent when `q^2 N >= 1`.
pub fn xi_hs_closed_form(q: &Rational, n: usize) -> Result<Rational> {
    let r = require_convergent(q, n)?;
    Ok(&r / (Rational::one() - &r))
}

/// `sum_{m=1}^{depth} (q^2 N)^m`, the same norm on the space truncated at
/// `depth`. Finite for every `q`.
pub fn xi_hs_truncated(q: &Rational, n: usize, depth: usize) -> Rational {
    let r = hs_ratio(q, n);
    (1..=depth).fold(Rational::zero(), |acc, m| acc + pow(&r, m))
}

/// Gap between closed form and truncation: `(q^2 N)^{depth+1} / (1 - q^2 N)`.
pub fn xi_hs_tail(q: &Rational, n: usize, depth: usize) -> Result<Rational> {
    let r = require_convergent(q, n)?;
    Ok(pow(&r, depth + 1) / (Rational::one() - &r))
}

/// `N - q^2 N^2 / (1 - q^2 N)`.
pub fn delta_star_qbound(q: &Rational, n: usize) -> Result<Rational> {
    let r = require_convergent(q, n)?;
    let nn = int(n as i64);
    Ok(&nn - &r * &nn / (Rational::one() - &r))
}
