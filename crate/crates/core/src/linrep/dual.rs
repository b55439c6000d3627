//! Products dual to a coproduct on words: Hadamard (letters are primitive
//! for the diagonal coproduct) and the q-shuffle family, which contains the
//! shuffle (`q = 0`) and the infiltration product (`q = 1`).
//!
//! Both are Kronecker constructions and rely on commuting scalars.

use super::LinRep;
use crate::error::{Error, Result};
use crate::matrix::{kron_vec, Matrix};
use crate::semiring::Semiring;

fn same_alphabet<K: Semiring>(a: &LinRep<K>, b: &LinRep<K>) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// Realizes `w ↦ f(w)·g(w)`.
pub fn hadamard_rep<K: Semiring>(a: &LinRep<K>, b: &LinRep<K>) -> Result<LinRep<K>> {
    same_alphabet(a, b)?;
    let mu = a
        .mus()
        .iter()
        .zip(b.mus())
        .map(|(x, y)| x.kron(y))
        .collect();
    LinRep::new(
        a.alphabet().clone(),
        kron_vec(a.lambda(), b.lambda()),
        mu,
        kron_vec(a.gamma(), b.gamma()),
    )
}

/// Realizes the q-shuffle `f ↑_q g`, determined by
/// `(xu) ↑_q (yv) = x(u ↑_q yv) + y(xu ↑_q v) + [x = y]·q·x(u ↑_q v)`,
/// through `μ(x) = μ₁(x)⊗I + I⊗μ₂(x) + q·μ₁(x)⊗μ₂(x)`.
pub fn qshuffle_rep<K: Semiring>(a: &LinRep<K>, b: &LinRep<K>, q: &K) -> Result<LinRep<K>> {
    same_alphabet(a, b)?;
    let (ia, ib) = (Matrix::unit(a.dim()), Matrix::unit(b.dim()));
    let mu = a
        .mus()
        .iter()
        .zip(b.mus())
        .map(|(x, y)| {
            let mut m = x.kron(&ib).add(&ia.kron(y))?;
            if !q.is_zero() {
                m = m.add(&x.kron(y).scale(q))?;
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    LinRep::new(
        a.alphabet().clone(),
        kron_vec(a.lambda(), b.lambda()),
        mu,
        kron_vec(a.gamma(), b.gamma()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_rep;
    use crate::semiring::{Integer, Natural, Rational};
    use crate::words::{Alphabet, Word};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_chars(s).unwrap()
    }

    /// Coefficients of `u ↑_q v` by the defining recursion.
    fn qshuffle_words(
        u: &[usize],
        v: &[usize],
        q: i64,
        out: &mut Vec<(Vec<usize>, i64)>,
        prefix: &mut Vec<usize>,
        c: i64,
    ) {
        if c == 0 {
            return;
        }
        match (u.split_first(), v.split_first()) {
            (None, None) => out.push((prefix.clone(), c)),
            (None, Some(_)) | (Some(_), None) => {
                let mut w = prefix.clone();
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.push((w, c));
            }
            (Some((&x, ur)), Some((&y, vr))) => {
                prefix.push(x);
                qshuffle_words(ur, v, q, out, prefix, c);
                prefix.pop();
                prefix.push(y);
                qshuffle_words(u, vr, q, out, prefix, c);
                prefix.pop();
                if x == y {
                    prefix.push(x);
                    qshuffle_words(ur, vr, q, out, prefix, c * q);
                    prefix.pop();
                }
            }
        }
    }

    fn coeff_in(u: &[usize], v: &[usize], w: &[usize], q: i64) -> i64 {
        let mut out = vec![];
        qshuffle_words(u, v, q, &mut out, &mut vec![], 1);
        out.iter().filter(|(x, _)| x == w).map(|(_, c)| c).sum()
    }

    #[test]
    fn infiltration_of_a_letter_with_itself() {
        let a = alpha("a");
        let x = LinRep::letter(a.clone(), 0, Natural::from(0)).unwrap();
        let r = qshuffle_rep(&x, &x, &Natural::from(1)).unwrap();
        assert_eq!(r.eval_word(&Word::new(vec![0])).unwrap(), Natural::from(1));
        assert_eq!(
            r.eval_word(&Word::new(vec![0, 0])).unwrap(),
            Natural::from(2)
        );
        assert_eq!(r.eval_word(&Word::empty()).unwrap(), Natural::from(0));
        let sh = qshuffle_rep(&x, &x, &Natural::from(0)).unwrap();
        assert_eq!(sh.eval_word(&Word::new(vec![0])).unwrap(), Natural::from(0));
        assert_eq!(
            sh.eval_word(&Word::new(vec![0, 0])).unwrap(),
            Natural::from(2)
        );
    }

    #[test]
    fn hadamard_is_pointwise() {
        let mut rng = StdRng::seed_from_u64(41);
        let ab = alpha("ab");
        for _ in 0..10 {
            let f: LinRep<Rational> = random_rep(&mut rng, &ab, 3);
            let g: LinRep<Rational> = random_rep(&mut rng, &ab, 3);
            let h = hadamard_rep(&f, &g).unwrap();
            assert_eq!(h.dim(), f.dim() * g.dim());
            assert_eq!(
                h.to_series(5),
                f.to_series(5).pointwise_product(&g.to_series(5)).unwrap()
            );
        }
    }

    #[test]
    fn qshuffle_matches_the_word_recursion() {
        let mut rng = StdRng::seed_from_u64(42);
        let ab = alpha("ab");
        let words: Vec<Word> = ab.words_upto(4).collect();
        for q in [0i64, 1, -2] {
            for _ in 0..4 {
                let f: LinRep<Integer> = random_rep(&mut rng, &ab, 2);
                let g: LinRep<Integer> = random_rep(&mut rng, &ab, 2);
                let r = qshuffle_rep(&f, &g, &Integer::from(q)).unwrap();
                for w in &words {
                    let mut expected = Integer::from(0);
                    for u in &words {
                        for v in &words {
                            if u.len() + v.len() < w.len() || u.len().max(v.len()) > w.len() {
                                continue;
                            }
                            let c = coeff_in(u.letters(), v.letters(), w.letters(), q);
                            if c != 0 {
                                let t = f.eval_word(u).unwrap().mul(&g.eval_word(v).unwrap());
                                expected = expected.add(&Integer::from(c).mul(&t));
                            }
                        }
                    }
                    assert_eq!(r.eval_word(w).unwrap(), expected, "q={q} w={w:?}");
                }
            }
        }
    }

    #[test]
    fn alphabets_must_agree() {
        let f = LinRep::<Natural>::zero(alpha("a"));
        let g = LinRep::<Natural>::zero(alpha("ab"));
        assert_eq!(hadamard_rep(&f, &g), Err(Error::AlphabetMismatch));
    }
}
