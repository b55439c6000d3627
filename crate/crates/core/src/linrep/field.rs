//! Algorithms that need exact division: reduction, equivalence and the rank
//! of the Hankel matrix.

use std::collections::VecDeque;

use super::{dot, LinRep};
use crate::cancel::CancelToken;
use crate::error::Result;
use crate::expr::{Localization, RatExpr};
use crate::matrix::Matrix;
use crate::semiring::Field;

/// A subspace of `Kⁿ` kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Span<K> {
    dim: usize,
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

impl<K: Field> Span<K> {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<K>] {
        &self.rows
    }

    fn residual(&self, v: &[K]) -> Vec<K> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.sub(&c.mul(r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = self.residual(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in the basis; `v` must lie in the span.
    pub fn coords(&self, v: &[K]) -> Vec<K> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }
}

/// Keeps only the states reachable from λ: the span of `{λμ(u)}`.
fn left_reduce<K: Field>(r: &LinRep<K>, cancel: &CancelToken) -> Result<LinRep<K>> {
    let mut span = Span::new(r.dim());
    let mut queue = VecDeque::new();
    if span.insert(r.lambda()) {
        queue.push_back(r.lambda().to_vec());
    }
    while let Some(v) = queue.pop_front() {
        cancel.check()?;
        for m in r.mus() {
            let w = m.left_apply(&v);
            if span.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    let k = span.rank();
    let basis = span.basis();
    let mu = r
        .mus()
        .iter()
        .map(|m| {
            let images: Vec<Vec<K>> = basis
                .iter()
                .map(|e| span.coords(&m.left_apply(e)))
                .collect();
            Matrix::from_fn(k, k, |i, j| images[i][j].clone())
        })
        .collect();
    let gamma = basis.iter().map(|e| dot(e, r.gamma())).collect();
    LinRep::new(r.alphabet().clone(), span.coords(r.lambda()), mu, gamma)
}

/// A representation of minimal dimension realizing the same series.
pub fn reduce_rep<K: Field>(r: &LinRep<K>) -> Result<LinRep<K>> {
    reduce_rep_with(r, &CancelToken::new())
}

pub fn reduce_rep_with<K: Field>(r: &LinRep<K>, cancel: &CancelToken) -> Result<LinRep<K>> {
    let left = left_reduce(r, cancel)?;
    Ok(left_reduce(&left.transpose(), cancel)?.transpose())
}

/// Whether two representations realize the same series.
pub fn equiv<K: Field>(a: &LinRep<K>, b: &LinRep<K>) -> Result<bool> {
    let diff = a.sum(&b.scale_left(&K::one().neg()))?;
    Ok(reduce_rep(&diff)?.dim() == 0)
}

/// Rank of the Hankel block `[f(uv)]` over `|u|, |v| ≤ max_len`.
pub fn hankel_rank<K: Field>(r: &LinRep<K>, max_len: usize) -> usize {
    let words: Vec<_> = r.alphabet().words_upto(max_len).collect();
    let cols: Vec<Vec<K>> = words
        .iter()
        .map(|v| r.column_vector(v).expect("words from the alphabet"))
        .collect();
    let mut span = Span::new(words.len());
    for u in &words {
        let row = r.row_vector(u).expect("words from the alphabet");
        let h: Vec<K> = cols.iter().map(|c| dot(&row, c)).collect();
        span.insert(&h);
    }
    span.rank()
}

/// [`super::expr_to_rep`] with a reduction after every node, which keeps
/// the intermediate dimensions at their minimum.
pub fn expr_to_min_rep<K: Field>(e: &RatExpr<K>, loc: &Localization<K>) -> Result<LinRep<K>> {
    super::expr_to_rep_with(e, loc, &mut |r| reduce_rep(&r))
}

/// Rank over `K` of the rows `λμ(u)`, `|u| ≤ max_len`.
pub fn reachable_rank<K: Field>(r: &LinRep<K>, max_len: usize) -> usize {
    let mut span = Span::new(r.dim());
    for u in r.alphabet().words_upto(max_len) {
        span.insert(&r.row_vector(&u).expect("words from the alphabet"));
    }
    span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::expr::parse_expr;
    use crate::random::random_rep;
    use crate::semiring::{Rational, Semiring};
    use crate::words::Alphabet;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_chars(s).unwrap()
    }

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    fn compile(text: &str, a: &Alphabet) -> LinRep<Rational> {
        let e = parse_expr(text, a).unwrap();
        super::super::expr_to_rep(&e, &Localization::zero(a.clone())).unwrap()
    }

    #[test]
    fn span_basics() {
        let mut s = Span::new(3);
        assert!(s.insert(&[q("2"), q("0"), q("1")]));
        assert!(!s.insert(&[q("4"), q("0"), q("2")]));
        assert!(s.insert(&[q("0"), q("1"), q("0")]));
        assert!(s.contains(&[q("1"), q("5"), q("1/2")]));
        assert!(!s.contains(&[q("0"), q("0"), q("1")]));
        assert_eq!(s.rank(), 2);
        let v = [q("6"), q("-1"), q("3")];
        let c = s.coords(&v);
        let back: Vec<Rational> = (0..3)
            .map(|j| {
                s.basis()
                    .iter()
                    .zip(&c)
                    .fold(Rational::zero(), |acc, (row, ci)| acc.add(&ci.mul(&row[j])))
            })
            .collect();
        assert_eq!(back, v.to_vec());
    }

    #[test]
    fn reduction_of_a_doubled_geometric_series() {
        let a = alpha("a");
        let r = compile("a* + a*", &a);
        let red = reduce_rep(&r).unwrap();
        assert_eq!(red.dim(), 1);
        assert!(equiv(&red, &r).unwrap());
        assert_eq!(red.to_series(6), r.to_series(6));
    }

    #[test]
    fn square_of_star_has_dimension_two() {
        let a = alpha("a");
        let r = compile("(a*)(a*)", &a);
        assert_eq!(reduce_rep(&r).unwrap().dim(), 2);
        for l in 2..=6 {
            assert_eq!(hankel_rank(&r, l), 2);
        }
    }

    #[test]
    fn hankel_rank_of_ab_star() {
        let ab = alpha("ab");
        let r = compile("(ab)*", &ab);
        assert_eq!(hankel_rank(&r, 4), 2);
        assert_eq!(reduce_rep(&r).unwrap().dim(), 2);
    }

    #[test]
    fn equivalence_of_expressions() {
        let ab = alpha("ab");
        assert!(equiv(&compile("(a+b)*", &ab), &compile("(a*b)*a*", &ab)).unwrap());
        assert!(equiv(&compile("(ab)*a", &ab), &compile("a(ba)*", &ab)).unwrap());
        assert!(!equiv(&compile("(a+b)*", &ab), &compile("(ab)*", &ab)).unwrap());
        assert!(equiv(&compile("a + -1<a", &ab), &LinRep::zero(ab.clone())).unwrap());
    }

    #[test]
    fn reduced_dimension_is_the_hankel_rank() {
        let mut rng = StdRng::seed_from_u64(31);
        let ab = alpha("ab");
        for _ in 0..30 {
            let r: LinRep<Rational> = random_rep(&mut rng, &ab, 4);
            let red = reduce_rep(&r).unwrap();
            assert!(red.dim() <= r.dim());
            assert_eq!(red.to_series(6), r.to_series(6));
            assert_eq!(hankel_rank(&r, 4), red.dim());
            assert_eq!(reduce_rep(&red).unwrap().dim(), red.dim());
        }
    }

    #[test]
    fn reduction_can_be_cancelled() {
        let a = alpha("a");
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(
            reduce_rep_with(&compile("a*", &a), &token),
            Err(Error::Cancelled)
        );
    }

    #[test]
    fn minimal_compilation() {
        let ab = alpha("ab");
        let e: RatExpr<Rational> = parse_expr("((a+b)*(ab)*)*", &ab).unwrap();
        let loc = Localization::zero(ab.clone());
        let plain = super::super::expr_to_rep(&e, &loc);
        // the star operand has constant term 1, so both refuse
        assert!(plain.is_err());
        assert!(expr_to_min_rep(&e, &loc).is_err());
        let e = parse_expr("(a(a+b)*(ab)*)*", &ab).unwrap();
        let plain = super::super::expr_to_rep(&e, &loc).unwrap();
        let min = expr_to_min_rep(&e, &loc).unwrap();
        assert!(min.dim() <= plain.dim());
        assert!(equiv(&plain, &min).unwrap());
        assert_eq!(reachable_rank(&min, 4), min.dim());
    }
}
