//! Recursive-descent parser for rational expressions.
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := factor (('.' | '·')? factor)*
//! factor  := scalar '<' factor
//!          | scalar ('.' | '·')? factor      left action, sugar
//!          | postfix
//! postfix := primary ('*' | '>' scalar)*
//! primary := letter | '0' | '(' expr ')'
//! ```
//!
//! Scalars use the semiring's literal syntax (`3/2`, `-1`, `true`, `-inf`,
//! `inf`). A bare `0` not followed by `<` is the null expression.

use super::RatExpr;
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::words::Alphabet;

const KEYWORDS: [&str; 4] = ["-inf", "inf", "true", "false"];

/// Parses `text` over `alphabet`. No rewriting is applied: the tree is the
/// one written.
pub fn parse_expr<K: Semiring>(text: &str, alphabet: &Alphabet) -> Result<RatExpr<K>> {
    let mut p = Parser {
        src: text,
        pos: 0,
        alphabet,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_dot(&mut self) -> bool {
        self.eat('.') || self.eat('·')
    }

    fn expr<K: Semiring>(&mut self) -> Result<RatExpr<K>> {
        let mut e = self.term()?;
        while self.eat('+') {
            e = RatExpr::sum(e, self.term()?);
        }
        Ok(e)
    }

    fn term<K: Semiring>(&mut self) -> Result<RatExpr<K>> {
        let mut e = self.factor()?;
        while self.eat_dot() || self.starts_factor() {
            e = RatExpr::product(e, self.factor()?);
        }
        Ok(e)
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            None => false,
            Some('(') => true,
            Some(c) if c.is_ascii_digit() || c == '-' => true,
            Some(_) => {
                self.alphabet.match_prefix(self.rest()).is_some() || self.keyword().is_some()
            }
        }
    }

    /// A scalar keyword at the cursor, if not glued to further identifier
    /// characters.
    fn keyword(&self) -> Option<&'static str> {
        let rest = self.rest();
        KEYWORDS.into_iter().find(|k| {
            rest.starts_with(k)
                && !rest[k.len()..]
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
        })
    }

    /// Length of the scalar literal at the cursor, without consuming it.
    fn scalar_len(&mut self) -> Option<usize> {
        self.skip_ws();
        if let Some(k) = self.keyword() {
            return Some(k.len());
        }
        let rest = self.rest();
        let bytes = rest.as_bytes();
        let mut i = 0;
        if bytes.first() == Some(&b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start {
            return None;
        }
        if bytes.get(i) == Some(&b'/') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        Some(i)
    }

    fn scalar<K: Semiring>(&mut self) -> Result<K> {
        let start = self.pos;
        let len = self
            .scalar_len()
            .ok_or_else(|| self.error("expected a scalar"))?;
        let lit = self.rest()[..len].to_string();
        let value = K::parse(&lit).map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("{lit:?} is not a {} scalar", K::KIND),
        })?;
        self.pos += lit.len();
        Ok(value)
    }

    fn factor<K: Semiring>(&mut self) -> Result<RatExpr<K>> {
        if let Some(len) = self.scalar_len() {
            let is_zero = &self.rest()[..len] == "0";
            let explicit = self.rest()[len..].trim_start().starts_with('<');
            if !is_zero || explicit {
                let c = self.scalar::<K>()?;
                if !self.eat('<') {
                    self.eat_dot();
                    if !self.starts_factor() {
                        return Err(self.error("a scalar must act on an expression"));
                    }
                }
                return Ok(RatExpr::left(c, self.factor()?));
            }
        }
        self.postfix()
    }

    fn postfix<K: Semiring>(&mut self) -> Result<RatExpr<K>> {
        let mut e = self.primary()?;
        loop {
            if self.eat('*') {
                e = RatExpr::star(e);
            } else if self.eat('>') {
                self.skip_ws();
                let c = self.scalar()?;
                e = RatExpr::right(e, c);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary<K: Semiring>(&mut self) -> Result<RatExpr<K>> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(RatExpr::Zero);
        }
        match self.alphabet.match_prefix(self.rest()) {
            Some(x) => {
                self.pos += self.alphabet.name(x).len();
                Ok(RatExpr::Letter(x))
            }
            None => match self.peek() {
                None => Err(self.error("unexpected end of input")),
                Some(c) if c.is_alphabetic() => Err(Error::UnknownLetter(
                    self.rest()
                        .chars()
                        .take_while(|c| c.is_alphanumeric())
                        .collect(),
                )),
                Some(c) => Err(self.error(&format!("unexpected {c:?}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_expr;
    use crate::semiring::{Boolean, CompletedPositive, MaxPlus, Natural, Rational};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn star_of_a_sum() {
        let e: RatExpr<Rational> = parse_expr("(a+b)*", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::star(RatExpr::sum(RatExpr::Letter(0), RatExpr::Letter(1)))
        );
    }

    #[test]
    fn scalar_sugar_and_trailing_zero() {
        let e: RatExpr<Rational> = parse_expr("2·a·b + 0", &ab()).unwrap();
        let expected = RatExpr::sum(
            RatExpr::product(RatExpr::left(q(2), RatExpr::Letter(0)), RatExpr::Letter(1)),
            RatExpr::Zero,
        );
        assert_eq!(e, expected);
        let e2: RatExpr<Rational> = parse_expr("2 a b + 0", &ab()).unwrap();
        assert_eq!(e2, expected);
        let e3: RatExpr<Rational> = parse_expr("2<a.b+0", &ab()).unwrap();
        assert_eq!(e3, expected);
    }

    #[test]
    fn double_star() {
        let e: RatExpr<Rational> = parse_expr("a**", &ab()).unwrap();
        assert_eq!(e, RatExpr::star(RatExpr::star(RatExpr::Letter(0))));
    }

    #[test]
    fn precedence() {
        let e: RatExpr<Rational> = parse_expr("2<a*", &ab()).unwrap();
        assert_eq!(e, RatExpr::left(q(2), RatExpr::star(RatExpr::Letter(0))));
        let e: RatExpr<Rational> = parse_expr("ab*", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::product(RatExpr::Letter(0), RatExpr::star(RatExpr::Letter(1)))
        );
        let e: RatExpr<Rational> = parse_expr("a>-1/2*", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::star(RatExpr::right(RatExpr::Letter(0), Rational::new(-1, 2)))
        );
        let e: RatExpr<Rational> = parse_expr("a+b.a", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::sum(
                RatExpr::Letter(0),
                RatExpr::product(RatExpr::Letter(1), RatExpr::Letter(0))
            )
        );
        let e: RatExpr<Rational> = parse_expr("0.a", &ab()).unwrap();
        assert_eq!(e, RatExpr::product(RatExpr::Zero, RatExpr::Letter(0)));
    }

    #[test]
    fn semiring_keywords() {
        let e: RatExpr<MaxPlus> = parse_expr("-inf<a + a>3", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::sum(
                RatExpr::left(MaxPlus::neg_infinity(), RatExpr::Letter(0)),
                RatExpr::right(RatExpr::Letter(0), MaxPlus::finite(3))
            )
        );
        let e: RatExpr<Boolean> = parse_expr("true<b", &ab()).unwrap();
        assert_eq!(e, RatExpr::left(Boolean(true), RatExpr::Letter(1)));
        let e: RatExpr<CompletedPositive> = parse_expr("inf a", &ab()).unwrap();
        assert_eq!(
            e,
            RatExpr::left(CompletedPositive::Infinity, RatExpr::Letter(0))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let r: Result<RatExpr<Rational>> = parse_expr("(a+b", &ab());
        assert!(matches!(r, Err(Error::Syntax { pos: 4, .. })));
        let r: Result<RatExpr<Rational>> = parse_expr("a+c", &ab());
        assert!(matches!(r, Err(Error::UnknownLetter(l)) if l == "c"));
        let r: Result<RatExpr<Natural>> = parse_expr("-1<a", &ab());
        assert!(matches!(r, Err(Error::Syntax { pos: 0, .. })));
        let r: Result<RatExpr<Rational>> = parse_expr("3", &ab());
        assert!(matches!(r, Err(Error::Syntax { .. })));
        let r: Result<RatExpr<Rational>> = parse_expr("a)", &ab());
        assert!(matches!(r, Err(Error::Syntax { pos: 1, .. })));
        let r: Result<RatExpr<Rational>> = parse_expr("", &ab());
        assert!(r.is_err());
    }

    #[test]
    fn display_reparses_to_the_same_tree() {
        let mut rng = StdRng::seed_from_u64(11);
        let alpha = Alphabet::from_chars("abc").unwrap();
        for _ in 0..300 {
            let e: RatExpr<Rational> = random_expr(&mut rng, 3, 10);
            let text = e.display(&alpha).to_string();
            let back: RatExpr<Rational> = parse_expr(&text, &alpha).unwrap();
            assert_eq!(back, e, "{text}");
        }
        for _ in 0..100 {
            let e: RatExpr<MaxPlus> = random_expr(&mut rng, 2, 8);
            let text = e.display(&alpha).to_string();
            assert_eq!(parse_expr::<MaxPlus>(&text, &alpha).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn multi_character_letters() {
        let alpha = Alphabet::new(["x1", "x"]).unwrap();
        let e: RatExpr<Natural> = parse_expr("x1x*", &alpha).unwrap();
        assert_eq!(
            e,
            RatExpr::product(RatExpr::Letter(0), RatExpr::star(RatExpr::Letter(1)))
        );
    }
}
