//! Dense matrices over an arbitrary "star algebra" and the star of a matrix.
//!
//! Matrix entries are not always plain semiring scalars: `matrix_star` is
//! also applied to matrices of truncated series and of rational
//! expressions, whose zero and unit depend on a context (alphabet, window).
//! [`Algebra`] carries that context.

use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Operations needed to compute with matrices over some carrier.
pub trait Algebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// The algebra of the scalars of a semiring.
pub struct Scalars<K>(PhantomData<K>);

impl<K> Scalars<K> {
    pub fn new() -> Self {
        Scalars(PhantomData)
    }
}

impl<K> Default for Scalars<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Semiring> Algebra for Scalars<K> {
    type Elem = K;

    fn zero(&self) -> K {
        K::zero()
    }
    fn one(&self) -> K {
        K::one()
    }
    fn add(&self, a: &K, b: &K) -> K {
        a.add(b)
    }
    fn mul(&self, a: &K, b: &K) -> K {
        a.mul(b)
    }
    fn star(&self, a: &K) -> Result<K> {
        a.star()
    }
    fn is_zero(&self, a: &K) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Sub-block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (top, left) = (a.rows, a.cols);
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < top, j < left) {
                (true, true) => a.get(i, j),
                (true, false) => b.get(i, j - left),
                (false, true) => c.get(i - top, j),
                (false, false) => d.get(i - top, j - left),
            }
            .clone()
        })
    }

    pub fn zeros<A: Algebra<Elem = T>>(alg: &A, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, alg.zero())
    }

    pub fn identity<A: Algebra<Elem = T>>(alg: &A, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { alg.one() } else { alg.zero() })
    }

    pub fn add_in<A: Algebra<Elem = T>>(&self, alg: &A, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| alg.add(a, b))
                .collect(),
        })
    }

    pub fn mul_in<A: Algebra<Elem = T>>(&self, alg: &A, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !alg.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = alg.add(&out.data[idx], &alg.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<K: Semiring> Matrix<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, K::zero())
    }

    pub fn unit(n: usize) -> Self {
        Matrix::identity(&Scalars::new(), n)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_in(&Scalars::new(), other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_in(&Scalars::new(), other)
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|x| c.mul(x))
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[K]) -> Vec<K> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![K::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = o.add(&vi.mul(m));
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_apply(&self, v: &[K]) -> Vec<K> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(m, x)| !m.is_zero() && !x.is_zero())
                    .fold(K::zero(), |acc, (m, x)| acc.add(&m.mul(x)))
            })
            .collect()
    }

    /// Kronecker product; its mixed-product law needs commuting scalars.
    pub fn kron(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            self.get(i1, j1).mul(other.get(i2, j2))
        })
    }
}

/// Kronecker product of vectors.
pub fn kron_vec<K: Semiring>(a: &[K], b: &[K]) -> Vec<K> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.mul(y)))
        .collect()
}

/// Star of a square matrix by block recursion on the first index:
///
/// ```text
/// [[a, b], [c, d]]* = [[a* + a* b s* c a*, a* b s*], [s* c a*, s*]]
/// where s = d + c a* b
/// ```
///
/// The result satisfies `M* = I + M·M* = I + M*·M` whenever every pivot
/// star exists.
pub fn matrix_star<A: Algebra>(alg: &A, m: &Matrix<A::Elem>) -> Result<Matrix<A::Elem>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    star_from(alg, m, 0)
}

fn star_from<A: Algebra>(alg: &A, m: &Matrix<A::Elem>, depth: usize) -> Result<Matrix<A::Elem>> {
    let n = m.rows;
    if n == 0 {
        return Ok(m.clone());
    }
    let a_star = alg
        .star(m.get(0, 0))
        .map_err(|_| Error::UnstarrablePivot { index: depth })?;
    if n == 1 {
        return Ok(Matrix::filled(1, 1, a_star));
    }
    let b = m.block(0, 1, 1, n);
    let c = m.block(1, n, 0, 1);
    let d = m.block(1, n, 1, n);
    let a_star_m = Matrix::filled(1, 1, a_star);

    let a_star_b = a_star_m.mul_in(alg, &b)?;
    let c_a_star = c.mul_in(alg, &a_star_m)?;
    let s = d.add_in(alg, &c.mul_in(alg, &a_star_b)?)?;
    let s_star = star_from(alg, &s, depth + 1)?;

    let top_right = a_star_b.mul_in(alg, &s_star)?;
    let bottom_left = s_star.mul_in(alg, &c_a_star)?;
    let top_left = a_star_m.add_in(alg, &top_right.mul_in(alg, &c_a_star)?)?;
    Ok(Matrix::from_blocks(
        &top_left,
        &top_right,
        &bottom_left,
        &s_star,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Natural, Rational};

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn star_of_zero_is_identity() {
        let alg = Scalars::<Natural>::new();
        let z = Matrix::<Natural>::zero(3, 3);
        assert_eq!(matrix_star(&alg, &z).unwrap(), Matrix::unit(3));
        let one = Matrix::filled(1, 1, Natural::from(0));
        assert_eq!(matrix_star(&alg, &one).unwrap(), Matrix::unit(1));
    }

    #[test]
    fn rational_star_is_the_inverse_of_one_minus() {
        let alg = Scalars::<Rational>::new();
        let m = Matrix::from_rows(vec![vec![q("1/2"), q("1/3")], vec![q("0"), q("1/4")]]).unwrap();
        let s = matrix_star(&alg, &m).unwrap();
        let i = Matrix::unit(2);
        assert_eq!(s, i.add(&m.mul(&s).unwrap()).unwrap());
        assert_eq!(s, i.add(&s.mul(&m).unwrap()).unwrap());
        assert_eq!(*s.get(0, 0), q("2"));
        assert_eq!(*s.get(0, 1), q("8/9"));
    }

    #[test]
    fn errors() {
        let alg = Scalars::<Rational>::new();
        let rect = Matrix::<Rational>::zero(2, 3);
        assert!(matches!(
            matrix_star(&alg, &rect),
            Err(Error::NotSquare { .. })
        ));
        let m = Matrix::from_rows(vec![vec![q("1")]]).unwrap();
        assert_eq!(
            matrix_star(&alg, &m),
            Err(Error::UnstarrablePivot { index: 0 })
        );
        let nat = Scalars::<Natural>::new();
        let m = Matrix::from_rows(vec![
            vec![Natural::from(0), Natural::from(0)],
            vec![Natural::from(0), Natural::from(1)],
        ])
        .unwrap();
        assert_eq!(
            matrix_star(&nat, &m),
            Err(Error::UnstarrablePivot { index: 1 })
        );
    }

    #[test]
    fn kronecker_mixed_product() {
        let a = Matrix::from_rows(vec![vec![q("1"), q("2")], vec![q("0"), q("3")]]).unwrap();
        let b = Matrix::from_rows(vec![vec![q("-1"), q("1/2")], vec![q("4"), q("0")]]).unwrap();
        let lhs = a.kron(&b).mul(&b.kron(&a)).unwrap();
        let rhs = a.mul(&b).unwrap().kron(&b.mul(&a).unwrap());
        assert_eq!(lhs, rhs);
    }
}
