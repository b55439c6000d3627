//! Expressions to representations and back.

use super::LinRep;
use crate::cancel::CancelToken;
use crate::error::Result;
use crate::expr::{const_term, ExprAlgebra, Localization, RatExpr};
use crate::matrix::{Algebra, Matrix};
use crate::semiring::Semiring;

/// Compiles `e` into a representation of its evaluation under the letter
/// assignment `x ↦ Λ(x) + x`.
pub fn expr_to_rep<K: Semiring>(e: &RatExpr<K>, loc: &Localization<K>) -> Result<LinRep<K>> {
    expr_to_rep_with(e, loc, &mut |r| Ok(r))
}

/// Like [`expr_to_rep`], passing every intermediate representation through
/// `simplify` (which must preserve the realized series).
pub fn expr_to_rep_with<K: Semiring>(
    e: &RatExpr<K>,
    loc: &Localization<K>,
    simplify: &mut dyn FnMut(LinRep<K>) -> Result<LinRep<K>>,
) -> Result<LinRep<K>> {
    const_term(e, loc)?;
    build(e, loc, simplify)
}

fn build<K: Semiring>(
    e: &RatExpr<K>,
    loc: &Localization<K>,
    simplify: &mut dyn FnMut(LinRep<K>) -> Result<LinRep<K>>,
) -> Result<LinRep<K>> {
    let alphabet = loc.alphabet().clone();
    let r = match e {
        RatExpr::Zero => LinRep::zero(alphabet),
        RatExpr::Letter(x) => LinRep::letter(alphabet, *x, loc.get(*x).clone())?,
        RatExpr::Sum(a, b) => {
            let ra = build(a, loc, simplify)?;
            ra.sum(&build(b, loc, simplify)?)?
        }
        RatExpr::Product(a, b) => {
            let ra = build(a, loc, simplify)?;
            ra.product(&build(b, loc, simplify)?)?
        }
        RatExpr::LeftScalar(c, a) => build(a, loc, simplify)?.scale_left(c),
        RatExpr::RightScalar(a, c) => build(a, loc, simplify)?.scale_right(c),
        RatExpr::Star(a) => build(a, loc, simplify)?.star()?,
    };
    simplify(r)
}

/// Decompiles a representation into an expression over the same alphabet,
/// read with the identity assignment (`Λ ≡ 0`).
pub fn rep_to_expr<K: Semiring>(r: &LinRep<K>) -> Result<RatExpr<K>> {
    rep_to_expr_with(r, &CancelToken::new())
}

/// State elimination in state order on the graph with an initial node `I`
/// (edges weighted by λ), a final node `T` (edges weighted by γ) and the
/// transitions `Σₓ μ(x)ᵢⱼ·x`. Removing state `q` replaces every path
/// `p → q → r` by `L[p][q]·L[q][q]*·L[q][r]`, which is the Schur step of the
/// block star with `q` as pivot.
pub fn rep_to_expr_with<K: Semiring>(r: &LinRep<K>, cancel: &CancelToken) -> Result<RatExpr<K>> {
    let n = r.dim();
    let alg = ExprAlgebra::new(Localization::zero(r.alphabet().clone()));
    let (init, term) = (n, n + 1);
    let mut g = Matrix::filled(n + 2, n + 2, RatExpr::Zero);
    for p in 0..n {
        for q in 0..n {
            let mut edge = RatExpr::Zero;
            for (x, m) in r.mus().iter().enumerate() {
                let c = m.get(p, q);
                if !c.is_zero() {
                    let atom = alg.mul(&ExprAlgebra::scalar(c), &RatExpr::Letter(x));
                    edge = alg.add(&edge, &atom);
                }
            }
            g.set(p, q, edge);
        }
        g.set(init, p, ExprAlgebra::scalar(&r.lambda()[p]));
        g.set(p, term, ExprAlgebra::scalar(&r.gamma()[p]));
    }
    for q in 0..n {
        cancel.check()?;
        let loop_star = alg.star(g.get(q, q))?;
        let sources: Vec<usize> = (q + 1..n)
            .chain([init])
            .filter(|&p| !alg.is_zero(g.get(p, q)))
            .collect();
        let targets: Vec<usize> = (q + 1..n)
            .chain([term])
            .filter(|&s| !alg.is_zero(g.get(q, s)))
            .collect();
        for &p in &sources {
            let through = alg.mul(g.get(p, q), &loop_star);
            for &s in &targets {
                let path = alg.mul(&through, g.get(q, s));
                let updated = alg.add(g.get(p, s), &path);
                g.set(p, s, updated);
            }
        }
    }
    Ok(g.get(init, term).clone())
}
