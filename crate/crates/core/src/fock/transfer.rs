//! Transfer series `T_{n→n+k} = Σᵢ tⁱ·ω_{n→n+k}^{(i)}` through continued
//! fractions.
//!
//! With `E⁺ₙ = t²αₙ₊₁βₙ₊₁F⁺ₙ₊₁`, `E⁻ₙ = t²αₙβₙF⁻ₙ₋₁` (and `E⁻₀ = 0`):
//!
//! ```text
//! F⁺ₙ = 1/(1 − E⁺ₙ)    F⁻ₙ = 1/(1 − E⁻ₙ)    Fₙ = 1/(1 − E⁺ₙ − E⁻ₙ)
//! ```
//!
//! For `k ≥ 0`, reading the two factorizations of `W_{n→n+k}` through the
//! weighted representation `b± ↦ t·b±`,
//!
//! ```text
//! T = tᵏ·βₙ₊₁⋯βₙ₊ₖ · Fₙ·∏_{i=1}^{k} F⁺ₙ₊ᵢ = tᵏ·βₙ₊₁⋯βₙ₊ₖ · F_{n+k}·∏_{i=0}^{k-1} F⁻ₙ₊ᵢ
//! ```
//!
//! and for `k < 0`,
//!
//! ```text
//! T = t^{|k|}·αₙ⋯αₙ₊ₖ₊₁ · F_{n+k}·∏_{i=0}^{|k|-1} F⁺ₙ₋ᵢ = t^{|k|}·αₙ⋯αₙ₊ₖ₊₁ · Fₙ·∏_{i=1}^{|k|} F⁻ₙ₋ᵢ
//! ```
//!
//! The step weights are the `b±` letters between the continued-fraction
//! factors; with unit weights they are 1.

use std::fmt;

use super::{brute_force_omega, enumerate_transporter, nonzero_support, WeightSystem};
use crate::error::{Error, Result};
use crate::semiring::{Rational, Semiring};

/// A power series in `t` known up to `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferSeries {
    coeffs: Vec<Rational>,
}

impl TransferSeries {
    pub fn zero(order: usize) -> Self {
        TransferSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c·tᵈ`.
    pub fn monomial(order: usize, degree: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        TransferSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Result<&Rational> {
        self.coeffs.get(i).ok_or(Error::OutOfWindow {
            len: i,
            max_len: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        TransferSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TransferSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `tᵈ·self`, truncated.
    pub fn shift(&self, d: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in d..=n {
            out.coeffs[i] = self.coeffs[i - d].clone();
        }
        out
    }

    /// `1/(1 − self)` for a series without constant term.
    pub fn quasi_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotProper);
        }
        let n = self.order();
        let mut y = Self::zero(n);
        y.coeffs[0] = Rational::one();
        for m in 1..=n {
            let mut c = Rational::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    c = c.add(&self.coeffs[j].mul(&y.coeffs[m - j]));
                }
            }
            y.coeffs[m] = c;
        }
        Ok(y)
    }
}

impl fmt::Display for TransferSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·t")?,
                _ => write!(f, "{c}·t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfSign {
    /// `F⁺ₙ`: excursions above the level.
    Plus,
    /// `F⁻ₙ`: excursions below the level, never under 0.
    Minus,
    /// `Fₙ`: both.
    Full,
}

/// `t²·αₗβₗ·inner` for the step between levels `l − 1` and `l`.
fn edge(l: usize, w: &WeightSystem, inner: &TransferSeries) -> TransferSeries {
    inner.scale(&w.alpha(l).mul(&w.beta(l))).shift(2)
}

/// `E⁺ₙ`, unrolled from the level where further terms lie past `t^order`.
fn e_plus(n: usize, w: &WeightSystem, order: usize) -> TransferSeries {
    let depth = order.div_ceil(2) + 1;
    let mut f = TransferSeries::one(order);
    for l in (n + 1..n + depth).rev() {
        f = edge(l + 1, w, &f).quasi_inverse().expect("t² factor");
    }
    edge(n + 1, w, &f)
}

fn e_minus(n: usize, w: &WeightSystem, order: usize) -> TransferSeries {
    if n == 0 {
        return TransferSeries::zero(order);
    }
    let mut f = TransferSeries::one(order);
    for l in 1..n {
        f = edge(l, w, &f).quasi_inverse().expect("t² factor");
    }
    edge(n, w, &f)
}

/// `F⁺ₙ`, `F⁻ₙ` or `Fₙ` to order `order`.
pub fn cf_f(n: usize, sign: CfSign, w: &WeightSystem, order: usize) -> TransferSeries {
    let e = match sign {
        CfSign::Plus => e_plus(n, w, order),
        CfSign::Minus => e_minus(n, w, order),
        CfSign::Full => e_plus(n, w, order).add(&e_minus(n, w, order)),
    };
    e.quasi_inverse().expect("t² factor")
}

fn level(n: usize, k: i64) -> Result<usize> {
    let m = n as i64 + k;
    if m < 0 {
        return Err(Error::LevelUnderflow(m));
    }
    Ok(m as usize)
}

/// Both product forms of `T_{n→n+k}` to order `order`.
pub fn transfer_forms(
    n: usize,
    k: i64,
    w: &WeightSystem,
    order: usize,
) -> Result<(TransferSeries, TransferSeries)> {
    let m = level(n, k)?;
    let j = k.unsigned_abs() as usize;
    if order < j {
        return Err(Error::OrderTooSmall { order, shift: k });
    }
    let f = |l, s| cf_f(l, s, w, order);
    let prod = |init: TransferSeries, levels: Vec<usize>, s| {
        levels.into_iter().fold(init, |acc, l| acc.mul(&f(l, s)))
    };
    let (first, second, steps) = if k >= 0 {
        (
            prod(
                f(n, CfSign::Full),
                (1..=j).map(|i| n + i).collect(),
                CfSign::Plus,
            ),
            prod(
                f(m, CfSign::Full),
                (0..j).map(|i| n + i).collect(),
                CfSign::Minus,
            ),
            (1..=j).map(|i| w.beta(n + i)).collect::<Vec<_>>(),
        )
    } else {
        (
            prod(
                f(m, CfSign::Full),
                (0..j).map(|i| n - i).collect(),
                CfSign::Plus,
            ),
            prod(
                f(n, CfSign::Full),
                (1..=j).map(|i| n - i).collect(),
                CfSign::Minus,
            ),
            (0..j).map(|i| w.alpha(n - i)).collect(),
        )
    };
    let c = Rational::product(&steps);
    Ok((first.scale(&c).shift(j), second.scale(&c).shift(j)))
}

/// `T_{n→n+k}` to order `order`; the two product forms are computed and
/// must agree.
pub fn transfer_series(n: usize, k: i64, w: &WeightSystem, order: usize) -> Result<TransferSeries> {
    let (a, b) = transfer_forms(n, k, w, order)?;
    if let Some(i) = (0..=order).find(|&i| a.coeffs[i] != b.coeffs[i]) {
        return Err(Error::FormsDisagree(i));
    }
    Ok(a)
}

/// Continued-fraction coefficients against brute-force enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub n: usize,
    pub k: i64,
    pub computed: Vec<Rational>,
    pub brute_force: Vec<Rational>,
    /// Indices where the two disagree.
    pub mismatches: Vec<usize>,
    /// Whether every queried weight is nonzero, so the nonzero support
    /// must be the whole transporter set.
    pub weights_nonzero: bool,
    /// Lengths where some word of the transporter set has zero weight.
    pub strict_support: Vec<usize>,
    /// Lengths where a word outside the transporter set has nonzero weight,
    /// or (with nonzero weights) a transporter word has zero weight.
    pub support_violations: Vec<usize>,
}

impl TransferReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.support_violations.is_empty()
    }
}

pub fn verify_transfer(n: usize, k: i64, w: &WeightSystem, order: usize) -> Result<TransferReport> {
    let m = level(n, k)?;
    let computed = transfer_series(n, k, w, order)?.coeffs;
    let brute_force: Vec<Rational> = (0..=order).map(|i| brute_force_omega(n, m, i, w)).collect();
    let mismatches = (0..=order)
        .filter(|&i| computed[i] != brute_force[i])
        .collect();
    let weights_nonzero = w.all_nonzero(n.max(m) + order + 1);
    let mut strict_support = vec![];
    let mut support_violations = vec![];
    for i in 0..=order {
        let transporter = enumerate_transporter(n, m, i);
        let support = nonzero_support(n, m, i, w);
        let contained = support.iter().all(|x| transporter.binary_search(x).is_ok());
        let equal = contained && support.len() == transporter.len();
        if !contained || (weights_nonzero && !equal) {
            support_violations.push(i);
        }
        if contained && !equal {
            strict_support.push(i);
        }
    }
    Ok(TransferReport {
        n,
        k,
        computed,
        brute_force,
        mismatches,
        weights_nonzero,
        strict_support,
        support_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn even(s: &TransferSeries) -> Vec<Rational> {
        s.coeffs().iter().step_by(2).cloned().collect()
    }

    #[test]
    fn catalan_and_double_factorials() {
        let f = cf_f(0, CfSign::Plus, &WeightSystem::unit(), 8);
        assert_eq!(even(&f), ints(&[1, 1, 2, 5, 14]));
        let f = cf_f(0, CfSign::Plus, &WeightSystem::boson(), 8);
        assert_eq!(even(&f), ints(&[1, 1, 3, 15, 105]));
        for w in [WeightSystem::unit(), WeightSystem::boson()] {
            assert_eq!(cf_f(0, CfSign::Full, &w, 8), cf_f(0, CfSign::Plus, &w, 8));
            assert_eq!(cf_f(0, CfSign::Minus, &w, 8), TransferSeries::one(8));
        }
    }

    #[test]
    fn transfer_examples() {
        let u = WeightSystem::unit();
        let t = transfer_series(0, 0, &u, 8).unwrap();
        assert_eq!(t.coeffs(), ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]).as_slice());
        let t = transfer_series(0, 1, &u, 3).unwrap();
        assert_eq!(*t.coeff(1).unwrap(), Rational::one());
        assert_eq!(*t.coeff(3).unwrap(), Rational::from_integer(2));
        assert!(matches!(t.coeff(4), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn errors() {
        let u = WeightSystem::unit();
        assert_eq!(
            transfer_series(1, -2, &u, 4),
            Err(Error::LevelUnderflow(-1))
        );
        assert_eq!(
            transfer_series(0, 3, &u, 2),
            Err(Error::OrderTooSmall { order: 2, shift: 3 })
        );
    }

    #[test]
    fn parity() {
        let w = WeightSystem::random(3);
        for (n, k) in [(0, 1), (2, -1), (1, 2), (3, 0)] {
            let t = transfer_series(n, k, &w, 9).unwrap();
            for i in 0..=9 {
                if (i as i64 - k).rem_euclid(2) == 1 {
                    assert!(t.coeff(i).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn verification_reports() {
        let r = verify_transfer(0, 0, &WeightSystem::unit(), 8).unwrap();
        assert!(r.ok() && r.strict_support.is_empty());
        let r = verify_transfer(1, -1, &WeightSystem::boson(), 7).unwrap();
        assert!(r.ok());
        let cut = WeightSystem::unit().with_beta(1, Rational::zero());
        let r = verify_transfer(0, 0, &cut, 4).unwrap();
        assert!(r.ok());
        assert!(!r.weights_nonzero);
        assert_eq!(r.strict_support, vec![2, 4]);
    }

    #[test]
    fn quasi_inverse_of_geometric() {
        let x = TransferSeries::monomial(5, 1, Rational::one());
        assert_eq!(
            x.quasi_inverse().unwrap().coeffs(),
            ints(&[1; 6]).as_slice()
        );
        assert_eq!(
            TransferSeries::one(3).quasi_inverse(),
            Err(Error::NotProper)
        );
    }
}
