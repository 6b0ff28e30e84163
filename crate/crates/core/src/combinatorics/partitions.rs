//! Pair partitions with their crossing numbers, and the q-Wick moment
//! oracle built on them.

use num_bigint::BigInt;
use num_traits::One;

use super::QPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Default enumeration cap: `11!! = 10395` matchings (k = 6).
pub const DEFAULT_MATCHING_CAP: usize = 10_395;

/// A perfect matching of `{0, .., 2k-1}` as pairs `(a, b)` with `a < b`,
/// sorted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
    crossings: usize,
}

impl PairPartition {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let size = 2 * pairs.len();
        let mut seen = vec![false; size];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            for x in [p.0, p.1] {
                if x >= size || seen[x] {
                    return Err(Error::InvalidParams(format!(
                        "not a perfect matching of 0..{size}"
                    )));
                }
                seen[x] = true;
            }
        }
        pairs.sort_unstable();
        let crossings = count_crossings(&pairs);
        Ok(Self { pairs, crossings })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn half_size(&self) -> usize {
        self.pairs.len()
    }
}

/// `#{((a,b),(c,d)) : a < c < b < d}`.
fn count_crossings(pairs: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                count += 1;
            }
        }
    }
    count
}

fn double_factorial_odd(k: usize) -> Option<usize> {
    (1..=k).try_fold(1usize, |acc, j| acc.checked_mul(2 * j - 1))
}

/// Iterates over all perfect matchings of `2k` points. Each matching is
/// encoded by a mixed-radix counter: digit `t` picks the partner of the
/// smallest unmatched point among the `2(k-t)-1` remaining ones.
pub struct PairPartitions {
    k: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for PairPartitions {
    type Item = PairPartition;

    fn next(&mut self) -> Option<PairPartition> {
        if self.done {
            return None;
        }
        let mut remaining: Vec<usize> = (0..2 * self.k).collect();
        let mut pairs = Vec::with_capacity(self.k);
        for &d in &self.digits {
            let a = remaining.remove(0);
            let b = remaining.remove(d);
            pairs.push((a, b));
        }
        // advance the counter, last digit fastest
        self.done = true;
        for t in (0..self.k).rev() {
            let radix = 2 * (self.k - t) - 1;
            if self.digits[t] + 1 < radix {
                self.digits[t] += 1;
                self.done = false;
                break;
            }
            self.digits[t] = 0;
        }
        let crossings = count_crossings(&pairs);
        Some(PairPartition { pairs, crossings })
    }
}

/// All matchings of `size` points. Errors on odd `size` or when
/// `(size-1)!!` exceeds `cap`.
pub fn pair_partitions(size: usize, cap: usize) -> Result<PairPartitions> {
    if size % 2 == 1 {
        return Err(Error::InvalidParams(format!(
            "cannot pair an odd number ({size}) of points"
        )));
    }
    let k = size / 2;
    let count = double_factorial_odd(k).unwrap_or(usize::MAX);
    if count > cap {
        return Err(Error::Capacity {
            what: "pair partitions",
            needed: count,
            cap,
        });
    }
    Ok(PairPartitions {
        k,
        digits: vec![0; k],
        done: false,
    })
}

/// `sum q^{cr(pi)}` over matchings `pi` that only pair equal letters.
pub fn moment_polynomial(word: &[usize]) -> Result<QPolynomial> {
    let mut poly = QPolynomial::default();
    if word.len() % 2 == 1 {
        return Ok(poly);
    }
    for pi in pair_partitions(word.len(), DEFAULT_MATCHING_CAP)? {
        if pi.pairs().iter().all(|&(a, b)| word[a] == word[b]) {
            poly.add_monomial(pi.crossings(), BigInt::one());
        }
    }
    Ok(poly)
}

/// Vacuum moment `tau(X_{w1} ... X_{wm})` of the q-semicircular family by
/// the Wick formula.
pub fn moment_oracle(word: &[usize], q: &Rational) -> Result<Rational> {
    Ok(moment_polynomial(word)?.eval(q))
}

/// `sum_{pi in P_2(2k)} q^{cr(pi)}`, the moments `tau(X^{2k})`.
pub fn q_catalan(k: usize) -> Result<QPolynomial> {
    let mut poly = QPolynomial::default();
    for pi in pair_partitions(2 * k, DEFAULT_MATCHING_CAP)? {
        poly.add_monomial(pi.crossings(), BigInt::one());
    }
    Ok(poly)
}
