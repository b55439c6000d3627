//! Dyck codes and the factorizations of the transporter languages.
//!
//! Languages carry multiplicities in ℕ, so an equality of languages also
//! certifies that each product and star on either side is unambiguous.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{enumerate_transporter, excess, Ladder, LadderWord};
use crate::error::{Error, Result};

/// A characteristic series in `ℕ⟨⟨b₋, b₊⟩⟩` truncated at length `max_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    max_len: usize,
    words: BTreeMap<LadderWord, u64>,
}

impl Language {
    pub fn empty(max_len: usize) -> Self {
        Language {
            max_len,
            words: BTreeMap::new(),
        }
    }

    pub fn epsilon(max_len: usize) -> Self {
        Self::from_words(max_len, [LadderWord::empty()])
    }

    pub fn letter(max_len: usize, l: Ladder) -> Self {
        Self::from_words(max_len, [LadderWord(vec![l])])
    }

    /// Each word once; words longer than `max_len` are dropped.
    pub fn from_words(max_len: usize, words: impl IntoIterator<Item = LadderWord>) -> Self {
        let mut out = Self::empty(max_len);
        for w in words {
            if w.len() <= max_len {
                *out.words.entry(w).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn multiplicity(&self, w: &LadderWord) -> u64 {
        self.words.get(w).copied().unwrap_or(0)
    }

    /// Members in length-lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &LadderWord> {
        self.words.keys()
    }

    /// Whether every member has multiplicity one.
    pub fn is_set(&self) -> bool {
        self.words.values().all(|&c| c == 1)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.words {
            *out.words.entry(w.clone()).or_insert(0) += c;
        }
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.max_len.min(other.max_len));
        for (u, a) in &self.words {
            for (v, b) in &other.words {
                if u.len() + v.len() <= out.max_len {
                    *out.words.entry(u.concat(v)).or_insert(0) += a * b;
                }
            }
        }
        out
    }

    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::epsilon(self.max_len), |acc, _| acc.concat(self))
    }

    /// `Σ Xⁿ` for a language without the empty word.
    pub fn star(&self) -> Result<Self> {
        if self.multiplicity(&LadderWord::empty()) != 0 {
            return Err(Error::NotProper);
        }
        let mut out = Self::epsilon(self.max_len);
        let mut term = out.clone();
        while !term.is_empty() {
            term = term.concat(self);
            out = out.union(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .words
            .iter()
            .map(|(w, &c)| {
                if c == 1 {
                    w.to_string()
                } else {
                    format!("{c}·{w}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `D`, `D₊`, `D₋` or `D₋⁽ⁿ⁾`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyckTag {
    Dyck,
    Plus,
    /// Negative Dyck words, optionally restricted to depth at most `n`.
    Minus(Option<usize>),
}

impl FromStr for DyckTag {
    type Err = Error;

    /// `D`, `Dplus` (or `D+`), `Dminus` (or `D-`), optionally followed by
    /// `:n` for the depth restriction.
    fn from_str(s: &str) -> Result<Self> {
        let (name, depth) = match s.split_once(':') {
            Some((a, d)) => (
                a,
                Some(d.parse().map_err(|_| Error::UnknownLetter(s.to_string()))?),
            ),
            None => (s, None),
        };
        match (name, depth) {
            ("D", None) => Ok(DyckTag::Dyck),
            ("Dplus" | "D+", None) => Ok(DyckTag::Plus),
            ("Dminus" | "D-", d) => Ok(DyckTag::Minus(d)),
            _ => Err(Error::UnknownLetter(s.to_string())),
        }
    }
}

impl fmt::Display for DyckTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyckTag::Dyck => write!(f, "D"),
            DyckTag::Plus => write!(f, "Dplus"),
            DyckTag::Minus(None) => write!(f, "Dminus"),
            DyckTag::Minus(Some(n)) => write!(f, "Dminus:{n}"),
        }
    }
}

fn proper_prefixes(w: &LadderWord) -> impl Iterator<Item = i64> + '_ {
    let n = w.len();
    w.prefix_excesses().skip(1).take(n.saturating_sub(1))
}

fn is_member(tag: DyckTag, w: &LadderWord) -> bool {
    if w.is_empty() || excess(w) != 0 {
        return false;
    }
    match tag {
        DyckTag::Dyck => proper_prefixes(w).all(|e| e != 0),
        DyckTag::Plus => proper_prefixes(w).all(|e| e > 0),
        DyckTag::Minus(depth) => {
            proper_prefixes(w).all(|e| e < 0)
                && depth.is_none_or(|n| proper_prefixes(w).all(|e| e >= -(n as i64)))
        }
    }
}

/// The members of length at most `max_len`, filtered from all words by the
/// defining prefix conditions.
pub fn dyck_enumerate(tag: DyckTag, max_len: usize) -> Language {
    Language::from_words(
        max_len,
        LadderWord::all_upto(max_len).filter(|w| is_member(tag, w)),
    )
}

/// `open·X*·close`.
fn wrap(x: &Language, open: Ladder, close: Ladder) -> Language {
    let l = x.max_len();
    Language::letter(l, open)
        .concat(&x.star().expect("Dyck words are nonempty"))
        .concat(&Language::letter(l, close))
}

/// Least solution of `X = open·X*·close`, truncated.
fn least_fixpoint(open: Ladder, close: Ladder, max_len: usize) -> Language {
    let mut x = Language::empty(max_len);
    loop {
        let next = wrap(&x, open, close);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// `D₋⁽ⁿ⁾` built from `D₋⁽⁰⁾ = ∅` by `D₋⁽ⁿ⁾ = b₋(D₋⁽ⁿ⁻¹⁾)*b₊`.
fn restricted_minus(n: usize, max_len: usize) -> Language {
    (0..n).fold(Language::empty(max_len), |x, _| {
        wrap(&x, Ladder::Minus, Ladder::Plus)
    })
}

/// Whether the enumerated family equals the language generated by its
/// self-reproducing equation: `D₊ = b₊D₊*b₋`, `D₋⁽ⁿ⁾ = b₋(D₋⁽ⁿ⁻¹⁾)*b₊`,
/// `D₋ = b₋D₋*b₊` and `D = D₊ + D₋`.
pub fn check_dyck_fixpoint(tag: DyckTag, max_len: usize) -> bool {
    let generated = match tag {
        DyckTag::Plus => least_fixpoint(Ladder::Plus, Ladder::Minus, max_len),
        DyckTag::Minus(None) => least_fixpoint(Ladder::Minus, Ladder::Plus, max_len),
        DyckTag::Minus(Some(n)) => restricted_minus(n, max_len),
        DyckTag::Dyck => least_fixpoint(Ladder::Plus, Ladder::Minus, max_len)
            .union(&least_fixpoint(Ladder::Minus, Ladder::Plus, max_len)),
    };
    generated == dyck_enumerate(tag, max_len)
}

/// The two sides of the factorization of `W_{n→n+k}`.
pub fn factorization_sides(n: usize, k: i64, max_len: usize) -> Result<(Language, Language)> {
    let m = n as i64 + k;
    if m < 0 {
        return Err(Error::LevelUnderflow(m));
    }
    let l = max_len;
    let plus = dyck_enumerate(DyckTag::Plus, l);
    let plus_star = plus.star()?;
    let minus = |d: usize| dyck_enumerate(DyckTag::Minus(Some(d)), l);
    let loops = |d: usize| plus.union(&minus(d)).star();
    let bp = Language::letter(l, Ladder::Plus);
    let bm = Language::letter(l, Ladder::Minus);
    let j = k.unsigned_abs() as usize;
    if k >= 0 {
        // (D₊ + D₋⁽ⁿ⁾)*(b₊D₊*)ᵏ = ∏ᵢ (D₋⁽ⁿ⁺ⁱ⁾)*b₊ · (D₊ + D₋⁽ⁿ⁺ᵏ⁾)*
        let lhs = loops(n)?.concat(&bp.concat(&plus_star).power(j));
        let mut rhs = Language::epsilon(l);
        for i in 0..j {
            rhs = rhs.concat(&minus(n + i).star()?).concat(&bp);
        }
        Ok((lhs, rhs.concat(&loops(n + j)?)))
    } else {
        // (D₊*b₋)^{|k|}(D₊ + D₋⁽ⁿ⁺ᵏ⁾)* = (D₊ + D₋⁽ⁿ⁾)* ∏ᵢ b₋(D₋⁽ⁿ⁻ⁱ⁾)*
        let lhs = plus_star.concat(&bm).power(j).concat(&loops(n - j)?);
        let mut rhs = loops(n)?;
        for i in 1..=j {
            rhs = rhs.concat(&bm).concat(&minus(n - i).star()?);
        }
        Ok((lhs, rhs))
    }
}

/// Whether both sides of the factorization are the same unambiguous
/// language and equal the transporter set `W_{n→n+k}` up to `max_len`.
pub fn check_factorization(n: usize, k: i64, max_len: usize) -> Result<bool> {
    let (lhs, rhs) = factorization_sides(n, k, max_len)?;
    let m = (n as i64 + k) as usize;
    let transporter = Language::from_words(
        max_len,
        (0..=max_len).flat_map(|i| enumerate_transporter(n, m, i)),
    );
    Ok(lhs == rhs && lhs.is_set() && lhs == transporter)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LadderWord {
        s.parse().unwrap()
    }

    #[test]
    fn enumerations() {
        let p = dyck_enumerate(DyckTag::Plus, 4);
        assert_eq!(
            p.words().cloned().collect::<Vec<_>>(),
            vec![w("+-"), w("++--")]
        );
        assert!(dyck_enumerate(DyckTag::Minus(Some(0)), 10).is_empty());
        let m1 = dyck_enumerate(DyckTag::Minus(Some(1)), 2);
        assert_eq!(m1.words().cloned().collect::<Vec<_>>(), vec![w("-+")]);
        let d = dyck_enumerate(DyckTag::Dyck, 4);
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn depth_is_an_upper_bound() {
        let m2 = dyck_enumerate(DyckTag::Minus(Some(2)), 4);
        assert_eq!(
            m2.words().cloned().collect::<Vec<_>>(),
            vec![w("-+"), w("--++")]
        );
    }

    #[test]
    fn fixpoints() {
        assert!(check_dyck_fixpoint(DyckTag::Plus, 10));
        assert!(check_dyck_fixpoint(DyckTag::Dyck, 10));
        assert!(check_dyck_fixpoint(DyckTag::Minus(None), 10));
        for n in 0..=3 {
            assert!(check_dyck_fixpoint(DyckTag::Minus(Some(n)), 10));
        }
    }

    #[test]
    fn factorizations() {
        assert!(check_factorization(0, 0, 8).unwrap());
        assert!(check_factorization(2, 1, 8).unwrap());
        assert!(check_factorization(1, -1, 8).unwrap());
        assert_eq!(
            check_factorization(1, -2, 8),
            Err(Error::LevelUnderflow(-1))
        );
    }

    #[test]
    fn the_literal_negative_factorization_fails() {
        // (D₊b₋)ᵏ without the star misses words such as b₊b₋b₊b₋b₋
        let l = 8;
        let plus = dyck_enumerate(DyckTag::Plus, l);
        let bm = Language::letter(l, Ladder::Minus);
        let loops = plus
            .union(&dyck_enumerate(DyckTag::Minus(Some(0)), l))
            .star()
            .unwrap();
        let literal = plus.concat(&bm).concat(&loops);
        let (lhs, _) = factorization_sides(1, -1, l).unwrap();
        assert_ne!(literal, lhs);
    }

    #[test]
    fn language_operations() {
        let l = 4;
        let x = Language::letter(l, Ladder::Plus).union(&Language::letter(l, Ladder::Minus));
        assert_eq!(x.star().unwrap().len(), 31);
        assert!(x.star().unwrap().is_set());
        let doubled = x.union(&x);
        assert_eq!(doubled.multiplicity(&w("+")), 2);
        assert!(!doubled.is_set());
        assert_eq!(Language::epsilon(l).star(), Err(Error::NotProper));
        assert_eq!(
            "Dminus:3".parse::<DyckTag>().unwrap(),
            DyckTag::Minus(Some(3))
        );
        assert_eq!("D+".parse::<DyckTag>().unwrap(), DyckTag::Plus);
        assert!("Dplus:2".parse::<DyckTag>().is_err());
    }
}
