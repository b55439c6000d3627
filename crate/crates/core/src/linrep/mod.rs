//! Linear representations `(λ, μ, γ)` realizing series by
//! `f(w) = λ·μ(w)·γ`, and the rational operations on them.
//!
//! The constructions here are the closure witnesses: sum, Cauchy product,
//! star and scalar actions of representations realize the corresponding
//! operations on series. [`convert`] turns expressions into representations
//! and back; [`field`] holds the algorithms that need exact division;
//! [`dual`] the Hadamard and q-shuffle products.

pub mod convert;
pub mod dual;
pub mod field;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;
use crate::series::TruncatedSeries;
use crate::words::{offset, Alphabet, Word};

pub use convert::{expr_to_rep, expr_to_rep_with, rep_to_expr, rep_to_expr_with};
pub use dual::{hadamard_rep, qshuffle_rep};
pub use field::{equiv, expr_to_min_rep, hankel_rank, reduce_rep, reduce_rep_with};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRep<K> {
    alphabet: Alphabet,
    lambda: Vec<K>,
    mu: Vec<Matrix<K>>,
    gamma: Vec<K>,
}

/// Which end of the word a shift removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `w ↦ f(u·w)`
    Prefix,
    /// `w ↦ f(w·u)`
    Suffix,
}

impl<K: Semiring> LinRep<K> {
    pub fn new(
        alphabet: Alphabet,
        lambda: Vec<K>,
        mu: Vec<Matrix<K>>,
        gamma: Vec<K>,
    ) -> Result<Self> {
        let n = lambda.len();
        if gamma.len() != n {
            return Err(Error::Dimension(format!(
                "lambda has {n} entries, gamma {}",
                gamma.len()
            )));
        }
        if mu.len() != alphabet.len() {
            return Err(Error::Dimension(format!(
                "{} transition matrices for {} letters",
                mu.len(),
                alphabet.len()
            )));
        }
        if let Some(m) = mu.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension(format!(
                "transition matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(LinRep {
            alphabet,
            lambda,
            mu,
            gamma,
        })
    }

    /// The zero series, of dimension 0.
    pub fn zero(alphabet: Alphabet) -> Self {
        let mu = vec![Matrix::zero(0, 0); alphabet.len()];
        LinRep {
            alphabet,
            lambda: vec![],
            mu,
            gamma: vec![],
        }
    }

    /// `c·1`, the series supported on the empty word.
    pub fn constant(alphabet: Alphabet, c: K) -> Self {
        let mu = vec![Matrix::zero(1, 1); alphabet.len()];
        LinRep {
            alphabet,
            lambda: vec![c],
            mu,
            gamma: vec![K::one()],
        }
    }

    /// `c·1 + x`.
    pub fn letter(alphabet: Alphabet, x: usize, c: K) -> Result<Self> {
        alphabet.check(&Word::letter(x))?;
        let mu = (0..alphabet.len())
            .map(|y| {
                let mut m = Matrix::zero(2, 2);
                if y == x {
                    m.set(0, 1, K::one());
                }
                m
            })
            .collect();
        Ok(LinRep {
            alphabet,
            lambda: vec![K::one(), K::zero()],
            mu,
            gamma: vec![c, K::one()],
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[K] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[K] {
        &self.gamma
    }

    pub fn mu(&self, letter: usize) -> &Matrix<K> {
        &self.mu[letter]
    }

    pub fn mus(&self) -> &[Matrix<K>] {
        &self.mu
    }

    /// `μ(w)`, with `μ(ε)` the identity.
    pub fn mu_word(&self, w: &Word) -> Result<Matrix<K>> {
        self.alphabet.check(w)?;
        w.letters()
            .iter()
            .try_fold(Matrix::unit(self.dim()), |acc, &x| acc.mul(&self.mu[x]))
    }

    /// `λ·μ(w)`.
    pub fn row_vector(&self, w: &Word) -> Result<Vec<K>> {
        self.alphabet.check(w)?;
        Ok(w.letters()
            .iter()
            .fold(self.lambda.clone(), |v, &x| self.mu[x].left_apply(&v)))
    }

    /// `μ(w)·γ`.
    pub fn column_vector(&self, w: &Word) -> Result<Vec<K>> {
        self.alphabet.check(w)?;
        Ok(w.letters()
            .iter()
            .rev()
            .fold(self.gamma.clone(), |v, &x| self.mu[x].right_apply(&v)))
    }

    pub fn eval_word(&self, w: &Word) -> Result<K> {
        Ok(dot(&self.row_vector(w)?, &self.gamma))
    }

    /// Coefficients on every word of length at most `max_len`, sharing
    /// prefix computations.
    pub fn to_series(&self, max_len: usize) -> TruncatedSeries<K> {
        let s = self.alphabet.len();
        let mut rows: Vec<Vec<K>> = Vec::with_capacity(self.alphabet.count_upto(max_len));
        rows.push(self.lambda.clone());
        for m in 1..=max_len {
            for val in 0..s.pow(m as u32) {
                let parent = offset(s, m - 1) + val / s;
                let row = self.mu[val % s].left_apply(&rows[parent]);
                rows.push(row);
            }
        }
        let mut it = rows.iter();
        TruncatedSeries::from_fn(self.alphabet.clone(), max_len, |_| {
            dot(it.next().expect("one row per word"), &self.gamma)
        })
    }

    fn same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Direct sum: realizes `f + g`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| Matrix::from_blocks(a, &Matrix::zero(n1, n2), &Matrix::zero(n2, n1), b))
            .collect();
        Ok(LinRep {
            alphabet: self.alphabet.clone(),
            lambda: [self.lambda.clone(), other.lambda.clone()].concat(),
            mu,
            gamma: [self.gamma.clone(), other.gamma.clone()].concat(),
        })
    }

    /// Realizes the Cauchy product `f·g`:
    ///
    /// ```text
    /// λ = [λ₁, 0]   μ(x) = [[μ₁(x), γ₁λ₂μ₂(x)], [0, μ₂(x)]]   γ = [γ₁·g(ε); γ₂]
    /// ```
    ///
    /// Neither factor needs to be proper.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let g_const = dot(&other.lambda, &other.gamma);
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| {
                let lm = b.left_apply(&other.lambda);
                let link = Matrix::from_fn(n1, n2, |i, j| self.gamma[i].mul(&lm[j]));
                Matrix::from_blocks(a, &link, &Matrix::zero(n2, n1), b)
            })
            .collect();
        let mut lambda = self.lambda.clone();
        lambda.extend(std::iter::repeat_n(K::zero(), n2));
        let mut gamma: Vec<K> = self.gamma.iter().map(|g| g.mul(&g_const)).collect();
        gamma.extend(other.gamma.iter().cloned());
        Ok(LinRep {
            alphabet: self.alphabet.clone(),
            lambda,
            mu,
            gamma,
        })
    }

    /// Realizes `f*` for a proper `f` (`λγ = 0`): the transitions become
    /// `μ(x) + γλμ(x)` and one extra state carries the constant term 1.
    pub fn star(&self) -> Result<Self> {
        if !dot(&self.lambda, &self.gamma).is_zero() {
            return Err(Error::NotProper);
        }
        let n = self.dim();
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let lm = m.left_apply(&self.lambda);
                Matrix::from_fn(n + 1, n + 1, |i, j| {
                    if i < n && j < n {
                        m.get(i, j).add(&self.gamma[i].mul(&lm[j]))
                    } else {
                        K::zero()
                    }
                })
            })
            .collect();
        let mut lambda = self.lambda.clone();
        lambda.push(K::one());
        let mut gamma = self.gamma.clone();
        gamma.push(K::one());
        Ok(LinRep {
            alphabet: self.alphabet.clone(),
            lambda,
            mu,
            gamma,
        })
    }

    /// Realizes `c·f`.
    pub fn scale_left(&self, c: &K) -> Self {
        LinRep {
            lambda: self.lambda.iter().map(|x| c.mul(x)).collect(),
            ..self.clone()
        }
    }

    /// Realizes `f·c`.
    pub fn scale_right(&self, c: &K) -> Self {
        LinRep {
            gamma: self.gamma.iter().map(|x| x.mul(c)).collect(),
            ..self.clone()
        }
    }

    /// Shift by `u`: `λ ← λμ(u)` for a prefix, `γ ← μ(u)γ` for a suffix.
    pub fn shift(&self, u: &Word, side: Side) -> Result<Self> {
        Ok(match side {
            Side::Prefix => LinRep {
                lambda: self.row_vector(u)?,
                ..self.clone()
            },
            Side::Suffix => LinRep {
                gamma: self.column_vector(u)?,
                ..self.clone()
            },
        })
    }

    /// `(λ, μ, γ) ↦ (γᵀ, μᵀ, λᵀ)`; over commuting scalars this realizes the
    /// mirror series `w ↦ f(reverse(w))`.
    pub fn transpose(&self) -> Self {
        LinRep {
            alphabet: self.alphabet.clone(),
            lambda: self.gamma.clone(),
            mu: self.mu.iter().map(Matrix::transpose).collect(),
            gamma: self.lambda.clone(),
        }
    }

    /// The double family `(gᵢ, hᵢ)` with `f(uv) = Σᵢ gᵢ(u)·hᵢ(v)`.
    pub fn factorize(&self) -> Factorization<'_, K> {
        Factorization { rep: self }
    }
}

/// `gᵢ(u) = (λμ(u))ᵢ` and `hᵢ(v) = (μ(v)γ)ᵢ`.
pub struct Factorization<'a, K> {
    rep: &'a LinRep<K>,
}

impl<K: Semiring> Factorization<'_, K> {
    pub fn len(&self) -> usize {
        self.rep.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn g(&self, u: &Word) -> Result<Vec<K>> {
        self.rep.row_vector(u)
    }

    pub fn h(&self, v: &Word) -> Result<Vec<K>> {
        self.rep.column_vector(v)
    }

    /// `Σᵢ gᵢ(u)·hᵢ(v)`.
    pub fn combine(&self, u: &Word, v: &Word) -> Result<K> {
        Ok(dot(&self.g(u)?, &self.h(v)?))
    }
}

pub(crate) fn dot<K: Semiring>(a: &[K], b: &[K]) -> K {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(K::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `rep_sum`
pub fn rep_sum<K: Semiring>(a: &LinRep<K>, b: &LinRep<K>) -> Result<LinRep<K>> {
    a.sum(b)
}

/// `rep_product`
pub fn rep_product<K: Semiring>(a: &LinRep<K>, b: &LinRep<K>) -> Result<LinRep<K>> {
    a.product(b)
}

/// `rep_star`
pub fn rep_star<K: Semiring>(a: &LinRep<K>) -> Result<LinRep<K>> {
    a.star()
}

/// `shift_rep`
pub fn shift_rep<K: Semiring>(r: &LinRep<K>, u: &Word, side: Side) -> Result<LinRep<K>> {
    r.shift(u, side)
}
