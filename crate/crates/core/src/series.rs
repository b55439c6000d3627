//! Truncated noncommutative series.
//!
//! A [`TruncatedSeries`] stores the exact coefficients of a series of
//! `k<<X>>` on every word of length at most `max_len`. Words outside the
//! window are an error, never an implicit zero.

use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::matrix::Algebra;
use crate::semiring::Semiring;
use crate::words::{index_of_word, offset, word_at, Alphabet, Polynomial, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<K> {
    alphabet: Alphabet,
    max_len: usize,
    // indexed by canonical word rank
    coeffs: Vec<K>,
}

impl<K: Semiring> TruncatedSeries<K> {
    pub fn from_fn(alphabet: Alphabet, max_len: usize, mut f: impl FnMut(&Word) -> K) -> Self {
        let s = alphabet.len();
        let coeffs = (0..alphabet.count_upto(max_len))
            .map(|i| f(&word_at(s, i)))
            .collect();
        TruncatedSeries {
            alphabet,
            max_len,
            coeffs,
        }
    }

    pub fn zero(alphabet: Alphabet, max_len: usize) -> Self {
        let n = alphabet.count_upto(max_len);
        TruncatedSeries {
            alphabet,
            max_len,
            coeffs: vec![K::zero(); n],
        }
    }

    pub fn constant(alphabet: Alphabet, max_len: usize, c: K) -> Self {
        let mut s = Self::zero(alphabet, max_len);
        s.coeffs[0] = c;
        s
    }

    pub fn one(alphabet: Alphabet, max_len: usize) -> Self {
        Self::constant(alphabet, max_len, K::one())
    }

    /// The series of a single letter.
    pub fn letter(alphabet: Alphabet, max_len: usize, x: usize) -> Result<Self> {
        let mut s = Self::zero(alphabet, max_len);
        s.alphabet.check(&Word::letter(x))?;
        if max_len >= 1 {
            s.coeffs[1 + x] = K::one();
        }
        Ok(s)
    }

    /// Restriction of a polynomial to the window; terms beyond it are dropped.
    pub fn from_polynomial(p: &Polynomial<K>, max_len: usize) -> Self {
        let mut s = Self::zero(p.alphabet().clone(), max_len);
        for (w, c) in p.terms() {
            if w.len() <= max_len {
                let i = s.index(w);
                s.coeffs[i] = c.clone();
            }
        }
        s
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn index(&self, w: &Word) -> usize {
        index_of_word(self.alphabet.len(), w.letters())
    }

    pub fn coeff(&self, w: &Word) -> Result<&K> {
        if w.len() > self.max_len {
            return Err(Error::OutOfWindow {
                len: w.len(),
                max_len: self.max_len,
            });
        }
        self.alphabet.check(w)?;
        Ok(&self.coeffs[self.index(w)])
    }

    pub fn constant_term(&self) -> &K {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, w: &Word, c: K) -> Result<()> {
        self.coeff(w)?;
        let i = self.index(w);
        self.coeffs[i] = c;
        Ok(())
    }

    /// All `(word, coefficient)` pairs of the window in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &K)> + '_ {
        let s = self.alphabet.len();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (word_at(s, i), c))
    }

    /// Nonzero terms in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (Word, &K)> + '_ {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn truncate(&self, max_len: usize) -> Result<Self> {
        if max_len > self.max_len {
            return Err(Error::OutOfWindow {
                len: max_len,
                max_len: self.max_len,
            });
        }
        Ok(TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len,
            coeffs: self.coeffs[..self.alphabet.count_upto(max_len)].to_vec(),
        })
    }

    fn shared_window(&self, other: &Self) -> Result<usize> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.max_len.min(other.max_len))
    }

    /// Equality of the two series on words of length `<= upto`.
    pub fn agrees_with(&self, other: &Self, upto: usize) -> Result<bool> {
        let l = self.shared_window(other)?;
        if upto > l {
            return Err(Error::OutOfWindow {
                len: upto,
                max_len: l,
            });
        }
        let n = self.alphabet.count_upto(upto);
        Ok(self.coeffs[..n] == other.coeffs[..n])
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&K, &K) -> K) -> Result<Self> {
        let l = self.shared_window(other)?;
        let n = self.alphabet.count_upto(l);
        Ok(TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: l,
            coeffs: self.coeffs[..n]
                .iter()
                .zip(&other.coeffs[..n])
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, K::add)
    }

    /// Hadamard product: `(f ⊙ g)(w) = f(w)·g(w)`.
    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, K::mul)
    }

    pub fn scale_left(&self, c: &K) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn scale_right(&self, c: &K) -> Self {
        self.map(|x| x.mul(c))
    }

    fn map(&self, f: impl Fn(&K) -> K) -> Self {
        TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy (concatenation) product.
    pub fn cauchy_product(&self, other: &Self) -> Result<Self> {
        let l = self.shared_window(other)?;
        let s = self.alphabet.len();
        let mut coeffs = Vec::with_capacity(self.alphabet.count_upto(l));
        for m in 0..=l {
            for val in 0..s.pow(m as u32) {
                let mut acc = K::zero();
                for j in 0..=m {
                    let tail = s.pow((m - j) as u32);
                    let u = offset(s, j) + val / tail;
                    let v = offset(s, m - j) + val % tail;
                    let (a, b) = (&self.coeffs[u], &other.coeffs[v]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                coeffs.push(acc);
            }
        }
        Ok(TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: l,
            coeffs,
        })
    }

    /// Star of a proper series, `f* = Σ fⁿ`, computed through `y = 1 + f·y`.
    pub fn star(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotProper);
        }
        let s = self.alphabet.len();
        let mut y: Vec<K> = Vec::with_capacity(self.coeffs.len());
        y.push(K::one());
        for m in 1..=self.max_len {
            for val in 0..s.pow(m as u32) {
                let mut acc = K::zero();
                for j in 1..=m {
                    let tail = s.pow((m - j) as u32);
                    let u = offset(s, j) + val / tail;
                    let v = offset(s, m - j) + val % tail;
                    let a = &self.coeffs[u];
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(&y[v]));
                    }
                }
                y.push(acc);
            }
        }
        Ok(TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len,
            coeffs: y,
        })
    }

    /// `w ↦ f(u·w)`; the window shrinks by `|u|`.
    pub fn left_shift(&self, u: &Word) -> Result<Self> {
        self.shift(u, true)
    }

    /// `w ↦ f(w·u)`; the window shrinks by `|u|`.
    pub fn right_shift(&self, u: &Word) -> Result<Self> {
        self.shift(u, false)
    }

    fn shift(&self, u: &Word, prefix: bool) -> Result<Self> {
        self.alphabet.check(u)?;
        if u.len() > self.max_len {
            return Err(Error::OutOfWindow {
                len: u.len(),
                max_len: self.max_len,
            });
        }
        let s = self.alphabet.len();
        let uval = u.letters().iter().fold(0, |acc, &l| acc * s + l);
        let l = self.max_len - u.len();
        let mut coeffs = Vec::with_capacity(self.alphabet.count_upto(l));
        for m in 0..=l {
            let base = offset(s, m + u.len());
            for val in 0..s.pow(m as u32) {
                let i = if prefix {
                    base + uval * s.pow(m as u32) + val
                } else {
                    base + val * s.pow(u.len() as u32) + uval
                };
                coeffs.push(self.coeffs[i].clone());
            }
        }
        Ok(TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: l,
            coeffs,
        })
    }
}

/// Truncated series on a fixed window as a star algebra; only proper
/// series have a star.
#[derive(Clone, Debug)]
pub struct SeriesAlgebra<K> {
    alphabet: Alphabet,
    max_len: usize,
    _coeffs: PhantomData<K>,
}

impl<K: Semiring> SeriesAlgebra<K> {
    pub fn new(alphabet: Alphabet, max_len: usize) -> Self {
        SeriesAlgebra {
            alphabet,
            max_len,
            _coeffs: PhantomData,
        }
    }
}

impl<K: Semiring> Algebra for SeriesAlgebra<K> {
    type Elem = TruncatedSeries<K>;

    fn zero(&self) -> TruncatedSeries<K> {
        TruncatedSeries::zero(self.alphabet.clone(), self.max_len)
    }

    fn one(&self) -> TruncatedSeries<K> {
        TruncatedSeries::one(self.alphabet.clone(), self.max_len)
    }

    fn add(&self, a: &TruncatedSeries<K>, b: &TruncatedSeries<K>) -> TruncatedSeries<K> {
        a.add(b).expect("elements share the window")
    }

    fn mul(&self, a: &TruncatedSeries<K>, b: &TruncatedSeries<K>) -> TruncatedSeries<K> {
        a.cauchy_product(b).expect("elements share the window")
    }

    fn star(&self, a: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>> {
        a.star()
    }

    fn is_zero(&self, a: &TruncatedSeries<K>) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }
}
