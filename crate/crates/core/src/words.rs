//! Alphabets, words of the free monoid and finitely supported polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// An ordered, finite, non-empty set of letter names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("no letters".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l == "_" || l.chars().any(|c| c.is_whitespace()) {
                return Err(Error::InvalidAlphabet(format!("bad letter {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Alphabet(letters.into()))
    }

    /// Alphabet of single-character letters, e.g. `from_chars("ab")`.
    pub fn from_chars(letters: &str) -> Result<Self> {
        Self::new(letters.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.0[letter]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Longest letter that is a prefix of `text`.
    pub fn match_prefix(&self, text: &str) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, l)| text.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len())
            .map(|(i, _)| i)
    }

    /// Parses juxtaposed letter names; `_` (or the empty string) is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "_" {
            return Ok(Word::empty());
        }
        let mut rest = text;
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let i = self
                .match_prefix(rest)
                .ok_or_else(|| Error::UnknownLetter(rest.chars().next().unwrap().to_string()))?;
            letters.push(i);
            rest = &rest[self.0[i].len()..];
        }
        Ok(Word(letters))
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "_".to_string();
        }
        w.letters().iter().map(|&i| self.name(i)).collect()
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::UnknownLetter(format!("#{i}"))),
            None => Ok(()),
        }
    }

    /// Number of words of length at most `max_len`.
    pub fn count_upto(&self, max_len: usize) -> usize {
        offset(self.len(), max_len + 1)
    }

    /// Iterates all words of length at most `max_len` in length-then-
    /// lexicographic order.
    pub fn words_upto(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        let s = self.len();
        (0..self.count_upto(max_len)).map(move |i| word_at(s, i))
    }

    /// Words of length exactly `len`, lexicographically.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let s = self.len();
        (offset(s, len)..offset(s, len + 1)).map(move |i| word_at(s, i))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Number of words of length `< len` over `s` letters.
pub(crate) fn offset(s: usize, len: usize) -> usize {
    if s == 1 {
        return len;
    }
    (s.pow(len as u32) - 1) / (s - 1)
}

/// Canonical index of a word (length-then-lexicographic rank).
pub(crate) fn index_of_word(s: usize, letters: &[usize]) -> usize {
    offset(s, letters.len()) + letters.iter().fold(0, |acc, &l| acc * s + l)
}

/// Inverse of [`index_of_word`].
pub(crate) fn word_at(s: usize, mut index: usize) -> Word {
    let mut len = 0;
    while index >= s.pow(len as u32) {
        index -= s.pow(len as u32);
        len += 1;
    }
    let mut letters = vec![0; len];
    for slot in letters.iter_mut().rev() {
        *slot = index % s;
        index /= s;
    }
    Word(letters)
}

/// A word of the free monoid, stored as letter indices into an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// All factorizations `self = u·v`, from `u = ε` to `v = ε`.
    pub fn splits(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.len()).map(|i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finitely supported map from words to scalars; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<K> {
    alphabet: Alphabet,
    terms: BTreeMap<Word, K>,
}

impl<K: Semiring> Polynomial<K> {
    pub fn zero(alphabet: Alphabet) -> Self {
        Polynomial {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Adds `coeff·w`.
    pub fn add_term(&mut self, w: Word, coeff: K) -> Result<()> {
        self.alphabet.check(&w)?;
        let sum = match self.terms.get(&w) {
            Some(c) => c.add(&coeff),
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
        Ok(())
    }

    pub fn with_term(mut self, w: Word, coeff: K) -> Result<Self> {
        self.add_term(w, coeff)?;
        Ok(self)
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Natural;

    #[test]
    fn concat_and_neutral() {
        let ab = Word::new(vec![0, 1]);
        let ba = Word::new(vec![1, 0]);
        assert_eq!(ab.concat(&ba), Word::new(vec![0, 1, 1, 0]));
        assert_eq!(Word::empty().concat(&ab), ab);
        assert_eq!(Word::letter(0).concat(&Word::empty()), Word::letter(0));
    }

    #[test]
    fn canonical_index_is_a_bijection_in_order() {
        for s in 1..=3 {
            let alpha = Alphabet::new((0..s).map(|i| format!("x{i}"))).unwrap();
            let words: Vec<Word> = alpha.words_upto(4).collect();
            assert_eq!(words.len(), alpha.count_upto(4));
            for (i, w) in words.iter().enumerate() {
                assert_eq!(index_of_word(s, w.letters()), i);
            }
            assert!(words.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn parse_and_render_words() {
        let alpha = Alphabet::from_chars("ab").unwrap();
        assert_eq!(
            alpha.parse_word("abba").unwrap(),
            Word::new(vec![0, 1, 1, 0])
        );
        assert_eq!(alpha.parse_word("_").unwrap(), Word::empty());
        assert!(matches!(
            alpha.parse_word("abc"),
            Err(Error::UnknownLetter(_))
        ));
        assert_eq!(alpha.render(&Word::empty()), "_");
        let long = Alphabet::new(["b-", "b+"]).unwrap();
        let w = long.parse_word("b+b-b-").unwrap();
        assert_eq!(w, Word::new(vec![1, 0, 0]));
        assert_eq!(long.render(&w), "b+b-b-");
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::from_chars("aa").is_err());
        assert!(Alphabet::new(["_"]).is_err());
    }

    #[test]
    fn polynomial_drops_zero_coefficients() {
        let alpha = Alphabet::from_chars("a").unwrap();
        let mut p = Polynomial::<Natural>::zero(alpha);
        p.add_term(Word::letter(0), Natural::from(2)).unwrap();
        p.add_term(Word::empty(), Natural::from(0)).unwrap();
        assert_eq!(p.terms().count(), 1);
        assert_eq!(p.coeff(&Word::letter(0)), Natural::from(2));
        assert_eq!(p.coeff(&Word::empty()), Natural::from(0));
        assert!(p.add_term(Word::letter(3), Natural::from(1)).is_err());
    }
}
