//! Rational expressions.
//!
//! [`RatExpr`] is the term algebra of completely free expressions over an
//! alphabet and a semiring. The constant term is a partial function on it;
//! its domain, for a given localization `Λ : X → k`, is the set of rational
//! expressions. An assignment `Θ` of series to letters (with constant terms
//! given by `Λ`) turns a rational expression into a series.

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Algebra;
use crate::semiring::Semiring;
use crate::series::TruncatedSeries;
use crate::words::Alphabet;

pub use parse::parse_expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatExpr<K> {
    /// The null expression `0_E`.
    Zero,
    Letter(usize),
    Sum(Box<RatExpr<K>>, Box<RatExpr<K>>),
    Product(Box<RatExpr<K>>, Box<RatExpr<K>>),
    LeftScalar(K, Box<RatExpr<K>>),
    RightScalar(Box<RatExpr<K>>, K),
    Star(Box<RatExpr<K>>),
}

impl<K: Semiring> RatExpr<K> {
    /// `0_E*`, whose constant term is always `1`.
    pub fn one() -> Self {
        RatExpr::Star(Box::new(RatExpr::Zero))
    }

    pub fn sum(a: Self, b: Self) -> Self {
        RatExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: Self, b: Self) -> Self {
        RatExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn left(c: K, e: Self) -> Self {
        RatExpr::LeftScalar(c, Box::new(e))
    }

    pub fn right(e: Self, c: K) -> Self {
        RatExpr::RightScalar(Box::new(e), c)
    }

    pub fn star(e: Self) -> Self {
        RatExpr::Star(Box::new(e))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            RatExpr::Zero | RatExpr::Letter(_) => 1,
            RatExpr::Sum(a, b) | RatExpr::Product(a, b) => 1 + a.size() + b.size(),
            RatExpr::LeftScalar(_, e) | RatExpr::RightScalar(e, _) | RatExpr::Star(e) => {
                1 + e.size()
            }
        }
    }

    pub fn max_letter(&self) -> Option<usize> {
        match self {
            RatExpr::Zero => None,
            RatExpr::Letter(x) => Some(*x),
            RatExpr::Sum(a, b) | RatExpr::Product(a, b) => a.max_letter().max(b.max_letter()),
            RatExpr::LeftScalar(_, e) | RatExpr::RightScalar(e, _) | RatExpr::Star(e) => {
                e.max_letter()
            }
        }
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&RatExpr<K>> {
        match self {
            RatExpr::Zero | RatExpr::Letter(_) => vec![],
            RatExpr::Sum(a, b) | RatExpr::Product(a, b) => vec![a, b],
            RatExpr::LeftScalar(_, e) | RatExpr::RightScalar(e, _) | RatExpr::Star(e) => vec![e],
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ExprDisplay<'a, K> {
        ExprDisplay {
            expr: self,
            alphabet,
        }
    }
}

/// Renders an expression in the same syntax [`parse_expr`] accepts.
pub struct ExprDisplay<'a, K> {
    expr: &'a RatExpr<K>,
    alphabet: &'a Alphabet,
}

impl<K: Semiring> ExprDisplay<'_, K> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &RatExpr<K>, ctx: u8) -> fmt::Result {
        let own = match e {
            RatExpr::Sum(..) => 0,
            RatExpr::Product(..) => 1,
            RatExpr::LeftScalar(..) => 2,
            RatExpr::Star(_) | RatExpr::RightScalar(..) => 3,
            RatExpr::Zero | RatExpr::Letter(_) => 4,
        };
        if own < ctx {
            f.write_str("(")?;
        }
        match e {
            RatExpr::Zero => f.write_str("0")?,
            RatExpr::Letter(x) => match self.alphabet.letters().get(*x) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "#{x}")?,
            },
            RatExpr::Sum(a, b) => {
                self.write(f, a, 0)?;
                f.write_str(" + ")?;
                self.write(f, b, 1)?;
            }
            RatExpr::Product(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(".")?;
                self.write(f, b, 2)?;
            }
            RatExpr::LeftScalar(c, a) => {
                write!(f, "{c}<")?;
                self.write(f, a, 2)?;
            }
            RatExpr::RightScalar(a, c) => {
                self.write(f, a, 3)?;
                write!(f, ">{c}")?;
            }
            RatExpr::Star(a) => {
                self.write(f, a, 3)?;
                f.write_str("*")?;
            }
        }
        if own < ctx {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<K: Semiring> fmt::Display for ExprDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.expr, 0)
    }
}

/// A constant term for every letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization<K> {
    alphabet: Alphabet,
    values: Vec<K>,
}

impl<K: Semiring> Localization<K> {
    pub fn new(alphabet: Alphabet, values: Vec<K>) -> Result<Self> {
        if values.len() != alphabet.len() {
            return Err(Error::AssignmentMismatch(format!(
                "{} values for {} letters",
                values.len(),
                alphabet.len()
            )));
        }
        Ok(Localization { alphabet, values })
    }

    /// `Λ ≡ 0`, the classical "localized at zero" setting.
    pub fn zero(alphabet: Alphabet) -> Self {
        let values = vec![K::zero(); alphabet.len()];
        Localization { alphabet, values }
    }

    /// Parses `a=0,b=1/2`; letters not mentioned get `0`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let mut loc = Self::zero(alphabet);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("expected letter=value, got {item:?}"),
            })?;
            let i = loc.alphabet.index_of(name.trim())?;
            loc.values[i] = K::parse(value)?;
        }
        Ok(loc)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn get(&self, letter: usize) -> &K {
        &self.values[letter]
    }

    pub fn values(&self) -> &[K] {
        &self.values
    }
}

/// Images `Θ(x)` of the letters, as series over a target alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterAssignment<K> {
    source: Alphabet,
    images: Vec<TruncatedSeries<K>>,
}

impl<K: Semiring> LetterAssignment<K> {
    pub fn new(source: Alphabet, images: Vec<TruncatedSeries<K>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::AssignmentMismatch(format!(
                "{} images for {} letters",
                images.len(),
                source.len()
            )));
        }
        if let Some(first) = images.first() {
            if images.iter().any(|s| s.alphabet() != first.alphabet()) {
                return Err(Error::AssignmentMismatch(
                    "images over different target alphabets".into(),
                ));
            }
        }
        Ok(LetterAssignment { source, images })
    }

    /// `Θ(x) = x`; only valid for `Λ ≡ 0`.
    pub fn identity(alphabet: Alphabet, max_len: usize) -> Self {
        Self::canonical(&Localization::zero(alphabet), max_len)
    }

    /// `Θ(x) = Λ(x) + x`, the assignment with the prescribed constant terms
    /// that is closest to the identity.
    pub fn canonical(loc: &Localization<K>, max_len: usize) -> Self {
        let alphabet = loc.alphabet().clone();
        let images = (0..alphabet.len())
            .map(|x| {
                let mut s = TruncatedSeries::letter(alphabet.clone(), max_len, x)
                    .expect("letter of the alphabet");
                s.set_coeff(&crate::words::Word::empty(), loc.get(x).clone())
                    .expect("empty word is in every window");
                s
            })
            .collect();
        LetterAssignment {
            source: alphabet,
            images,
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        self.images[0].alphabet()
    }

    pub fn image(&self, x: usize) -> &TruncatedSeries<K> {
        &self.images[x]
    }

    /// The localization induced by the constant terms of the images.
    pub fn localization(&self) -> Localization<K> {
        Localization {
            alphabet: self.source.clone(),
            values: self
                .images
                .iter()
                .map(|s| s.constant_term().clone())
                .collect(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.images.iter().map(|s| s.max_len()).min().unwrap_or(0)
    }
}

fn check_letters<K: Semiring>(e: &RatExpr<K>, alphabet: &Alphabet) -> Result<()> {
    match e.max_letter() {
        Some(x) if x >= alphabet.len() => Err(Error::AssignmentMismatch(format!(
            "letter #{x} outside an alphabet of {} letters",
            alphabet.len()
        ))),
        _ => Ok(()),
    }
}

/// The constant term of `e`, or the first starred subexpression (in
/// evaluation order) whose operand has a nonzero constant term.
pub fn const_term<K: Semiring>(e: &RatExpr<K>, loc: &Localization<K>) -> Result<K> {
    check_letters(e, loc.alphabet())?;
    const_rec(e, loc)
}

fn const_rec<K: Semiring>(e: &RatExpr<K>, loc: &Localization<K>) -> Result<K> {
    Ok(match e {
        RatExpr::Zero => K::zero(),
        RatExpr::Letter(x) => loc.get(*x).clone(),
        RatExpr::Sum(a, b) => const_rec(a, loc)?.add(&const_rec(b, loc)?),
        RatExpr::Product(a, b) => const_rec(a, loc)?.mul(&const_rec(b, loc)?),
        RatExpr::LeftScalar(c, a) => c.mul(&const_rec(a, loc)?),
        RatExpr::RightScalar(a, c) => const_rec(a, loc)?.mul(c),
        RatExpr::Star(a) => {
            if const_rec(a, loc)?.is_zero() {
                K::one()
            } else {
                return Err(Error::UndefinedConst(e.display(loc.alphabet()).to_string()));
            }
        }
    })
}

/// Whether `e` lies in the domain of the constant term.
pub fn is_rational<K: Semiring>(e: &RatExpr<K>, loc: &Localization<K>) -> bool {
    const_term(e, loc).is_ok()
}

/// Evaluates a rational expression under a letter assignment, on the window
/// of words of length at most `max_len`.
pub fn eval_expr<K: Semiring>(
    e: &RatExpr<K>,
    theta: &LetterAssignment<K>,
    max_len: usize,
) -> Result<TruncatedSeries<K>> {
    if theta.max_len() < max_len {
        return Err(Error::AssignmentMismatch(format!(
            "letter images known up to length {}, window is {max_len}",
            theta.max_len()
        )));
    }
    const_term(e, &theta.localization())?;
    let images: Vec<_> = theta
        .images
        .iter()
        .map(|s| s.truncate(max_len))
        .collect::<Result<_>>()?;
    eval_rec(e, &images, theta.target(), max_len)
}

fn eval_rec<K: Semiring>(
    e: &RatExpr<K>,
    images: &[TruncatedSeries<K>],
    target: &Alphabet,
    max_len: usize,
) -> Result<TruncatedSeries<K>> {
    let rec = |e| eval_rec(e, images, target, max_len);
    match e {
        RatExpr::Zero => Ok(TruncatedSeries::zero(target.clone(), max_len)),
        RatExpr::Letter(x) => Ok(images[*x].clone()),
        RatExpr::Sum(a, b) => rec(a)?.add(&rec(b)?),
        RatExpr::Product(a, b) => rec(a)?.cauchy_product(&rec(b)?),
        RatExpr::LeftScalar(c, a) => Ok(rec(a)?.scale_left(c)),
        RatExpr::RightScalar(a, c) => Ok(rec(a)?.scale_right(c)),
        RatExpr::Star(a) => rec(a)?.star(),
    }
}

/// Expressions as a star algebra, with light simplification: `0` is
/// absorbed, `0*` acts as the unit and scalar multiples of the unit are
/// folded into scalar actions. Stars are checked against a localization.
pub struct ExprAlgebra<K> {
    loc: Localization<K>,
}

impl<K: Semiring> ExprAlgebra<K> {
    pub fn new(loc: Localization<K>) -> Self {
        ExprAlgebra { loc }
    }

    fn is_one(e: &RatExpr<K>) -> bool {
        matches!(e, RatExpr::Star(inner) if **inner == RatExpr::Zero)
    }

    /// `c` as an expression: `0`, `0*` or `c<0*`.
    pub fn scalar(c: &K) -> RatExpr<K> {
        if c.is_zero() {
            RatExpr::Zero
        } else if c.is_one() {
            RatExpr::one()
        } else {
            RatExpr::left(c.clone(), RatExpr::one())
        }
    }
}

impl<K: Semiring> Algebra for ExprAlgebra<K> {
    type Elem = RatExpr<K>;

    fn zero(&self) -> RatExpr<K> {
        RatExpr::Zero
    }

    fn one(&self) -> RatExpr<K> {
        RatExpr::one()
    }

    fn add(&self, a: &RatExpr<K>, b: &RatExpr<K>) -> RatExpr<K> {
        match (a, b) {
            (RatExpr::Zero, _) => b.clone(),
            (_, RatExpr::Zero) => a.clone(),
            _ => RatExpr::sum(a.clone(), b.clone()),
        }
    }

    fn mul(&self, a: &RatExpr<K>, b: &RatExpr<K>) -> RatExpr<K> {
        match (a, b) {
            (RatExpr::Zero, _) | (_, RatExpr::Zero) => RatExpr::Zero,
            _ if Self::is_one(a) => b.clone(),
            _ if Self::is_one(b) => a.clone(),
            (RatExpr::LeftScalar(c, inner), _) if Self::is_one(inner) => {
                RatExpr::left(c.clone(), b.clone())
            }
            (_, RatExpr::LeftScalar(c, inner)) if Self::is_one(inner) => {
                RatExpr::right(a.clone(), c.clone())
            }
            _ => RatExpr::product(a.clone(), b.clone()),
        }
    }

    fn star(&self, a: &RatExpr<K>) -> Result<RatExpr<K>> {
        if *a == RatExpr::Zero {
            return Ok(RatExpr::one());
        }
        if !const_term(a, &self.loc)?.is_zero() {
            return Err(Error::UndefinedConst(
                RatExpr::star(a.clone())
                    .display(self.loc.alphabet())
                    .to_string(),
            ));
        }
        Ok(RatExpr::star(a.clone()))
    }

    fn is_zero(&self, a: &RatExpr<K>) -> bool {
        *a == RatExpr::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_star, Matrix};
    use crate::semiring::{Boolean, Integer, Natural, Rational};
    use crate::words::Word;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_chars(s).unwrap()
    }

    fn p<K: Semiring>(text: &str, a: &Alphabet) -> RatExpr<K> {
        parse_expr(text, a).unwrap()
    }

    #[test]
    fn const_of_zero_star_is_one() {
        let a = alpha("x");
        let e: RatExpr<Rational> = p("0*", &a);
        assert_eq!(
            const_term(&e, &Localization::zero(a.clone())).unwrap(),
            Rational::one()
        );
        assert!(is_rational(&e, &Localization::zero(a)));
    }

    #[test]
    fn star_of_a_letter_with_unit_constant_is_undefined() {
        let a = alpha("x");
        let e: RatExpr<Rational> = p("x*", &a);
        let loc = Localization::parse(a, "x=1").unwrap();
        match const_term(&e, &loc) {
            Err(Error::UndefinedConst(s)) => assert_eq!(s, "x*"),
            other => panic!("{other:?}"),
        }
        assert!(!is_rational(&e, &loc));
    }

    #[test]
    fn const_by_hand() {
        let a = alpha("ab");
        let e: RatExpr<Natural> = p("(a.b + 0)*.b", &a);
        let loc = Localization::zero(a);
        assert_eq!(const_term(&e, &loc).unwrap(), Natural::from(0));
    }

    #[test]
    fn cancelling_constant_terms_over_integers() {
        let a = alpha("x");
        let e: RatExpr<Integer> = p("(x + -1<x)*", &a);
        let loc = Localization::parse(a, "x=1").unwrap();
        assert!(is_rational(&e, &loc));
        assert_eq!(const_term(&e, &loc).unwrap(), Integer::from(1));
    }

    #[test]
    fn subtrees_of_rational_expressions_are_rational() {
        fn all_rational<K: Semiring>(e: &RatExpr<K>, loc: &Localization<K>) {
            assert!(is_rational(e, loc));
            for c in e.children() {
                all_rational(c, loc);
            }
        }
        let a = alpha("ab");
        let loc = Localization::parse(a.clone(), "a=1").unwrap();
        let e: RatExpr<Rational> = p("(a + -1<0*)*.(b* + 2<a)>3", &a);
        all_rational(&e, &loc);
    }

    #[test]
    fn geometric_and_square() {
        let a = alpha("a");
        let theta = LetterAssignment::identity(a.clone(), 10);
        let s = eval_expr(&p::<Natural>("a*", &a), &theta, 10).unwrap();
        for n in 0..=10 {
            assert_eq!(*s.coeff(&Word::new(vec![0; n])).unwrap(), Natural::from(1));
        }
        let sq = eval_expr(&p::<Natural>("(a*)(a*)", &a), &theta, 10).unwrap();
        assert_eq!(*sq.coeff(&Word::new(vec![0; 3])).unwrap(), Natural::from(4));
        let one = eval_expr(&p::<Natural>("0*", &a), &theta, 10).unwrap();
        assert_eq!(*one.coeff(&Word::empty()).unwrap(), Natural::from(1));
    }

    #[test]
    fn eval_rejects_non_rational_and_short_assignments() {
        let a = alpha("a");
        let loc = Localization::parse(a.clone(), "a=1").unwrap();
        let theta = LetterAssignment::canonical(&loc, 4);
        let e: RatExpr<Rational> = p("a*", &a);
        assert!(matches!(
            eval_expr(&e, &theta, 4),
            Err(Error::UndefinedConst(_))
        ));
        let e: RatExpr<Rational> = p("a", &a);
        assert!(matches!(
            eval_expr(&e, &theta, 5),
            Err(Error::AssignmentMismatch(_))
        ));
        let e: RatExpr<Rational> = RatExpr::Letter(3);
        assert!(matches!(
            eval_expr(&e, &theta, 4),
            Err(Error::AssignmentMismatch(_))
        ));
    }

    #[test]
    fn constant_term_of_the_evaluation() {
        let a = alpha("ab");
        let loc = Localization::parse(a.clone(), "a=1/2,b=2").unwrap();
        let theta = LetterAssignment::canonical(&loc, 3);
        let e: RatExpr<Rational> = p("(a.b + 3<a)>2 + (b + -2<0*)*", &a);
        let s = eval_expr(&e, &theta, 3).unwrap();
        assert_eq!(*s.constant_term(), const_term(&e, &loc).unwrap());
        assert_eq!(*s.constant_term(), Rational::parse("6").unwrap());
    }

    #[test]
    fn assignment_into_another_alphabet() {
        // x ↦ a + b, y ↦ ab over target {a, b}
        let src = alpha("xy");
        let tgt = alpha("ab");
        let l = 4;
        let a = TruncatedSeries::<Natural>::letter(tgt.clone(), l, 0).unwrap();
        let b = TruncatedSeries::<Natural>::letter(tgt.clone(), l, 1).unwrap();
        let theta = LetterAssignment::new(
            src.clone(),
            vec![a.add(&b).unwrap(), a.cauchy_product(&b).unwrap()],
        )
        .unwrap();
        let s = eval_expr(&p::<Natural>("x*.y", &src), &theta, l).unwrap();
        assert_eq!(
            *s.coeff(&tgt.parse_word("abab").unwrap()).unwrap(),
            Natural::from(1)
        );
        assert_eq!(
            *s.coeff(&tgt.parse_word("bbab").unwrap()).unwrap(),
            Natural::from(1)
        );
        assert_eq!(
            *s.coeff(&tgt.parse_word("ba").unwrap()).unwrap(),
            Natural::from(0)
        );
    }

    #[test]
    fn star_of_an_expression_matrix() {
        // [[0, a], [b, 0]]* = [[(ab)*, (ab)*a], [b(ab)*, (ba)*]]
        let ab = alpha("ab");
        let alg = ExprAlgebra::<Boolean>::new(Localization::zero(ab.clone()));
        let m = Matrix::from_rows(vec![
            vec![RatExpr::Zero, RatExpr::Letter(0)],
            vec![RatExpr::Letter(1), RatExpr::Zero],
        ])
        .unwrap();
        let s = matrix_star(&alg, &m).unwrap();
        let expected = [["(a.b)*", "(a.b)*.a"], ["b.(a.b)*", "(b.a)*"]];
        let theta = LetterAssignment::identity(ab.clone(), 6);
        for (i, row) in expected.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                let got = eval_expr(s.get(i, j), &theta, 6).unwrap();
                let want = eval_expr(&p::<Boolean>(text, &ab), &theta, 6).unwrap();
                assert_eq!(got, want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn expression_algebra_refuses_improper_stars() {
        let a = alpha("a");
        let alg = ExprAlgebra::<Rational>::new(Localization::zero(a));
        assert!(alg.star(&RatExpr::one()).is_err());
        assert_eq!(alg.star(&RatExpr::Zero).unwrap(), RatExpr::one());
        let two = ExprAlgebra::scalar(&Rational::from_integer(2));
        assert_eq!(
            alg.mul(&two, &RatExpr::Letter(0)),
            RatExpr::left(Rational::from_integer(2), RatExpr::Letter(0))
        );
        assert_eq!(
            alg.mul(&RatExpr::Letter(0), &two),
            RatExpr::right(RatExpr::Letter(0), Rational::from_integer(2))
        );
    }
}
