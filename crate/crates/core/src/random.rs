//! Random generators for tests, property checks and the CLI's seeded
//! weight systems.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;

use crate::expr::{const_term, Localization, RatExpr};
use crate::linrep::LinRep;
use crate::matrix::Matrix;
use crate::semiring::{Boolean, CompletedPositive, Integer, MaxPlus, Natural, Rational, Semiring};
use crate::series::TruncatedSeries;
use crate::words::Alphabet;

/// Small random elements of a semiring.
pub trait Sample: Semiring {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// A nonzero sample.
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl Sample for Boolean {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Boolean(rng.gen())
    }
}

impl Sample for Natural {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Natural(BigUint::from(rng.gen_range(0u32..=3)))
    }
}

impl Sample for Integer {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Integer(BigInt::from(rng.gen_range(-2i32..=2)))
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> BigRational {
    BigRational::new(
        rng.gen_range(lo..=hi).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

impl Sample for Rational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rational(small_rational(rng, -3, 3))
    }
}

impl Sample for MaxPlus {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 5) {
            MaxPlus::neg_infinity()
        } else {
            MaxPlus::finite(rng.gen_range(-2..=2))
        }
    }
}

impl Sample for CompletedPositive {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 8) {
            CompletedPositive::Infinity
        } else {
            CompletedPositive::Finite(small_rational(rng, 0, 3))
        }
    }
}

pub fn random_series<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
) -> TruncatedSeries<K> {
    TruncatedSeries::from_fn(alphabet.clone(), max_len, |_| K::sample(rng))
}

/// A random series with zero constant term.
pub fn random_proper_series<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
) -> TruncatedSeries<K> {
    TruncatedSeries::from_fn(alphabet.clone(), max_len, |w| {
        if w.is_empty() {
            K::zero()
        } else {
            K::sample(rng)
        }
    })
}

/// An arbitrary expression tree with at most `max_nodes` nodes; stars are
/// not checked and may be undefined.
pub fn random_expr<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    alphabet_size: usize,
    max_nodes: usize,
) -> RatExpr<K> {
    let budget = rng.gen_range(1..=max_nodes.max(1));
    gen_tree(rng, alphabet_size, budget)
}

fn gen_tree<K: Sample, R: Rng + ?Sized>(rng: &mut R, s: usize, budget: usize) -> RatExpr<K> {
    if budget <= 1 {
        return if rng.gen_ratio(1, 6) {
            RatExpr::Zero
        } else {
            RatExpr::Letter(rng.gen_range(0..s))
        };
    }
    let kinds = if budget >= 3 { 5 } else { 3 };
    match rng.gen_range(0..kinds) {
        0 => RatExpr::left(K::sample_nonzero(rng), gen_tree(rng, s, budget - 1)),
        1 => RatExpr::right(gen_tree(rng, s, budget - 1), K::sample_nonzero(rng)),
        2 => RatExpr::star(gen_tree(rng, s, budget - 1)),
        k => {
            let left = rng.gen_range(1..=budget - 2);
            let a = gen_tree(rng, s, left);
            let b = gen_tree(rng, s, budget - 1 - left);
            if k == 3 {
                RatExpr::sum(a, b)
            } else {
                RatExpr::product(a, b)
            }
        }
    }
}

/// A random rational expression for the given localization, with at most
/// `max_nodes` nodes. Star operands with a nonzero constant term are
/// multiplied by a letter with zero constant term, or replaced by `0` when
/// there is none.
pub fn random_rational_expr<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    loc: &Localization<K>,
    max_nodes: usize,
) -> RatExpr<K> {
    let s = loc.alphabet().len();
    let zero_letters: Vec<usize> = (0..s).filter(|&x| loc.get(x).is_zero()).collect();
    loop {
        let e = random_expr(rng, s, max_nodes);
        let repaired = repair(e, loc, &zero_letters, rng);
        if repaired.size() <= max_nodes {
            debug_assert!(const_term(&repaired, loc).is_ok());
            return repaired;
        }
    }
}

fn repair<K: Semiring, R: Rng + ?Sized>(
    e: RatExpr<K>,
    loc: &Localization<K>,
    zero_letters: &[usize],
    rng: &mut R,
) -> RatExpr<K> {
    let mut rec = |e| repair(e, loc, zero_letters, rng);
    match e {
        RatExpr::Zero | RatExpr::Letter(_) => e,
        RatExpr::Sum(a, b) => {
            let a = rec(*a);
            RatExpr::sum(a, rec(*b))
        }
        RatExpr::Product(a, b) => {
            let a = rec(*a);
            RatExpr::product(a, rec(*b))
        }
        RatExpr::LeftScalar(c, a) => RatExpr::left(c, rec(*a)),
        RatExpr::RightScalar(a, c) => RatExpr::right(rec(*a), c),
        RatExpr::Star(a) => {
            let a = rec(*a);
            let c = const_term(&a, loc).expect("repaired subtree");
            if c.is_zero() {
                RatExpr::star(a)
            } else if zero_letters.is_empty() {
                RatExpr::star(RatExpr::Zero)
            } else {
                let x = zero_letters[rng.gen_range(0..zero_letters.len())];
                RatExpr::star(RatExpr::product(a, RatExpr::Letter(x)))
            }
        }
    }
}

/// A random representation of dimension `1..=max_dim` with sparse small
/// entries.
pub fn random_rep<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_dim: usize,
) -> LinRep<K> {
    let n = rng.gen_range(1..=max_dim.max(1));
    let entry = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            K::zero()
        } else {
            K::sample(rng)
        }
    };
    let lambda = (0..n).map(|_| entry(rng)).collect();
    let gamma = (0..n).map(|_| entry(rng)).collect();
    let mu = (0..alphabet.len())
        .map(|_| Matrix::from_fn(n, n, |_, _| entry(rng)))
        .collect();
    LinRep::new(alphabet.clone(), lambda, mu, gamma).expect("consistent dimensions")
}

pub fn random_localization<K: Sample, R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
) -> Localization<K> {
    let values = (0..alphabet.len()).map(|_| K::sample(rng)).collect();
    Localization::new(alphabet.clone(), values).expect("one value per letter")
}
