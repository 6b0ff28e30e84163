use num_bigint::BigInt;
use num_traits::Zero;

use super::FockParams;
use crate::combinatorics::QPolynomial;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{pow, Rational};

/// `#{(i, j) : i < j, perm[i] > perm[j]}`.
pub fn inversion_number(perm: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..n` (0-based) paired with their inversion numbers.
fn permutations_with_inversions(n: usize) -> Vec<(Vec<usize>, usize)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), inversion_number(prefix)));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn word_letters(local: usize, n: usize, generators: usize) -> Vec<usize> {
    let mut letters = vec![0; n];
    let mut x = local;
    for k in (0..n).rev() {
        letters[k] = x % generators;
        x /= generators;
    }
    letters
}

fn check_bruteforce(params: &FockParams, n: usize, cap: usize) -> Result<()> {
    if n > params.depth {
        return Err(Error::InvalidParams(format!(
            "degree {n} exceeds depth {}",
            params.depth
        )));
    }
    if n > cap {
        return Err(Error::Capacity {
            what: "brute-force Gram degree (n! terms per entry)",
            needed: n,
            cap,
        });
    }
    Ok(())
}

/// Entries of `G_n` as polynomials in `q`:
/// `<e_I, e_J> = sum_{sigma in S_n} q^{inv(sigma)} prod_k [i_k = j_{sigma(k)}]`,
/// by direct enumeration of the symmetric group. Row-major, `N^n x N^n`.
pub fn gram_block_polynomials(params: &FockParams, n: usize) -> Result<Vec<QPolynomial>> {
    check_bruteforce(params, n, super::Caps::default().max_bruteforce_degree)?;
    Ok(polynomials_unchecked(params.n, n))
}

fn polynomials_unchecked(generators: usize, n: usize) -> Vec<QPolynomial> {
    let size = generators.pow(n as u32);
    let perms = permutations_with_inversions(n);
    let max_inv = n * n.saturating_sub(1) / 2;
    let words: Vec<Vec<usize>> = (0..size).map(|l| word_letters(l, n, generators)).collect();
    let sorted: Vec<Vec<usize>> = words
        .iter()
        .map(|w| {
            let mut s = w.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut out = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let mut counts = vec![0u64; max_inv + 1];
            // Only words with the same letter multiset can match.
            if sorted[a] == sorted[b] {
                let (i, j) = (&words[a], &words[b]);
                for (sigma, inv) in &perms {
                    if (0..n).all(|k| i[k] == j[sigma[k]]) {
                        counts[*inv] += 1;
                    }
                }
            }
            out.push(QPolynomial::new(counts.into_iter().map(BigInt::from).collect()));
        }
    }
    out
}

/// `G_n` by summing over all `n!` permutations. Oracle for
/// [`gram_block_recursive`].
pub fn gram_block_bruteforce(params: &FockParams, n: usize, cap: usize) -> Result<DenseMatrix> {
    params.validate()?;
    check_bruteforce(params, n, cap)?;
    let size = params.n.pow(n as u32);
    let polys = polynomials_unchecked(params.n, n);
    Ok(DenseMatrix::from_fn(size, size, |r, c| {
        polys[r * size + c].eval(&params.q)
    }))
}

/// `G_n` from `G_{n-1}` by contracting the first letter of `I`:
/// `<e_I, e_J> = sum_{k : j_k = i_1} q^{k-1} <e_{I'}, e_{J without k}>`.
pub fn gram_block_recursive(
    params: &FockParams,
    n: usize,
    previous: &DenseMatrix,
) -> Result<DenseMatrix> {
    if n == 0 {
        return Ok(DenseMatrix::identity(1));
    }
    let generators = params.n;
    let prev_size = generators.pow((n - 1) as u32);
    if previous.rows() != prev_size || previous.cols() != prev_size {
        return Err(Error::Dimension {
            expected: prev_size,
            got: previous.rows(),
        });
    }
    let size = prev_size * generators;
    let powers: Vec<Rational> = (0..n).map(|k| pow(&params.q, k)).collect();
    let words: Vec<Vec<usize>> = (0..size).map(|l| word_letters(l, n, generators)).collect();
    let local_index = |letters: &mut dyn Iterator<Item = usize>| {
        letters.fold(0usize, |acc, l| acc * generators + l)
    };
    let mut g = DenseMatrix::zeros(size, size);
    for (a, i) in words.iter().enumerate() {
        let tail = a % prev_size;
        for (b, j) in words.iter().enumerate() {
            let mut acc = Rational::zero();
            for k in 0..n {
                if j[k] != i[0] {
                    continue;
                }
                let rest = local_index(
                    &mut j.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &l)| l),
                );
                let e = &previous[(tail, rest)];
                if !e.is_zero() {
                    acc += &powers[k] * e;
                }
            }
            g[(a, b)] = acc;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_number(&[1, 2, 3]), 0);
        assert_eq!(inversion_number(&[2, 1]), 1);
        assert_eq!(inversion_number(&[3, 2, 1]), 3);
    }

    #[test]
    fn bruteforce_degree_two_entries() {
        let q = ratio(2, 7);
        let p = FockParams::new(q.clone(), 2, 2).unwrap();
        let g = gram_block_bruteforce(&p, 2, 7).unwrap();
        // local indices: 11 -> 0, 12 -> 1, 21 -> 2, 22 -> 3
        assert_eq!(g[(1, 2)], q);
        assert_eq!(g[(0, 0)], int(1) + &q);
        assert_eq!(g[(1, 1)], int(1));
        assert_eq!(g[(0, 1)], int(0));
    }

    #[test]
    fn recursive_first_steps() {
        let q = ratio(-1, 3);
        let p = FockParams::new(q.clone(), 2, 3).unwrap();
        let g1 = gram_block_recursive(&p, 1, &DenseMatrix::identity(1)).unwrap();
        assert_eq!(g1, DenseMatrix::identity(2));
        let g2 = gram_block_recursive(&p, 2, &g1).unwrap();
        assert_eq!(g2[(0, 0)], int(1) + &q);
        let g3 = gram_block_recursive(&p, 3, &g2).unwrap();
        assert_eq!(g3, gram_block_bruteforce(&p, 3, 7).unwrap());
    }

    #[test]
    fn recursive_rejects_wrong_previous() {
        let p = FockParams::new(int(0), 2, 3).unwrap();
        let err = gram_block_recursive(&p, 2, &DenseMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn bruteforce_cap() {
        let p = FockParams::new(int(0), 1, 8).unwrap();
        assert!(matches!(
            gram_block_bruteforce(&p, 8, 7),
            Err(Error::Capacity { .. })
        ));
    }
}
