//! Noncommutative polynomials in `X_1, .., X_N`: text grammar, evaluation
//! on the Fock space, the Wick bijection `P <-> P Omega`, and the
//! derivations `d^eta` into the tensor-square bimodule.

mod deriv;
mod parse;
mod poly;
mod tensor;
mod wick;

pub use deriv::{deriv_eta, free_difference_quotient, TensorPoly};
pub use parse::{parse, parse_with_generators};
pub use poly::NCPoly;
pub use tensor::{EtaVector, TensorVec};
pub use wick::{evaluate, wick_inverse, wick_vector, wick_words};

use crate::qfock::Word;

/// All monomials over `generators` letters of degree `<= max_degree`, in
/// canonical order.
pub fn monomials(generators: usize, max_degree: usize) -> Vec<Word> {
    let mut out = vec![Word::vacuum()];
    let mut start = 0;
    for _ in 0..max_degree {
        let end = out.len();
        for w in start..end {
            for i in 1..=generators {
                let next = out[w].append(i);
                out.push(next);
            }
        }
        start = end;
    }
    out
}
