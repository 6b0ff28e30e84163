use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::qfock::Word;
use crate::scalar::{format_rational, Rational};

/// A noncommutative polynomial in `X_1, .., X_N` with rational coefficients.
/// A monomial is a [`Word`] of generator indices; the empty word is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Word::vacuum(), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(&[i])
    }

    pub fn monomial(letters: &[usize]) -> Self {
        Self::term(Word(letters.to_vec()), Rational::one())
    }

    pub fn term(word: Word, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in canonical order: degree-major, then lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest monomial; `0` for constants and for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NCPoly) -> NCPoly {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, a: &Rational) -> NCPoly {
        if a.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * a)).collect(),
        }
    }

    pub fn mul(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                out.add_term(Word(w), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        (0..k).fold(NCPoly::one(), |acc, _| acc.mul(self))
    }

    /// The involution: reverses every monomial. Coefficients are real, so
    /// conjugation is the identity on them.
    pub fn adjoint(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
    let letters = w.letters();
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == letters[i] {
            run += 1;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "X{}", letters[i])?;
        if run > 1 {
            write!(f, "^{run}")?;
        }
        i += run;
    }
    Ok(())
}

/// Canonical form, e.g. `-X1^2 + 2*X1*X2`. Parsing it gives the same
/// polynomial back.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_vacuum() {
                f.write_str(&format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write_monomial(f, w)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn arithmetic() {
        let x1 = NCPoly::generator(1);
        let x2 = NCPoly::generator(2);
        let p = x1.mul(&x2).sub(&x2.mul(&x1));
        assert_eq!(p.len(), 2);
        assert_eq!(p.adjoint(), p.scale(&int(-1)));
        assert!(p.add(&p.adjoint()).is_zero());
        assert_eq!(x1.add(&x2).pow(2).len(), 4);
        assert_eq!(x1.pow(3).degree(), 3);
        assert_eq!(NCPoly::one().degree(), 0);
    }

    #[test]
    fn display() {
        let p = NCPoly::from_terms([
            (Word(vec![1, 2]), int(2)),
            (Word(vec![1, 1]), int(-1)),
            (Word::vacuum(), ratio(1, 2)),
        ]);
        assert_eq!(p.to_string(), "1/2 - X1^2 + 2*X1*X2");
        assert_eq!(NCPoly::zero().to_string(), "0");
        assert_eq!(NCPoly::constant(int(-3)).to_string(), "-3");
        assert_eq!(
            NCPoly::monomial(&[2, 1, 1, 2]).scale(&ratio(-3, 4)).to_string(),
            "-3/4*X2*X1^2*X2"
        );
    }
}
