//! The two-letter carrier problem on a Fock space.
//!
//! The basis `e₀, e₁, …` carries a right action of the free monoid on
//! `{b₋, b₊}`:
//!
//! ```text
//! e₀.b₋ = 0    eₙ₊₁.b₋ = αₙ₊₁·eₙ    eₙ.b₊ = βₙ₊₁·eₙ₊₁
//! ```
//!
//! The transfer coefficient `ω_{n→m}^{(i)}` sums `⟨eₙ.w | eₘ⟩` over the
//! words of length `i`. This module enumerates the transporter sets, builds
//! the Dyck codes, and computes the transfer series `T_{n→n+k}` both by
//! brute force and through continued fractions.

mod dyck;
mod transfer;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::semiring::{Rational, Semiring};

pub use dyck::{check_dyck_fixpoint, check_factorization, dyck_enumerate, DyckTag, Language};
pub use transfer::{
    cf_f, transfer_series, verify_transfer, CfSign, TransferReport, TransferSeries,
};

/// `b₋` lowers the level, `b₊` raises it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    Minus,
    Plus,
}

impl Ladder {
    pub fn step(self) -> i64 {
        match self {
            Ladder::Minus => -1,
            Ladder::Plus => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LadderWord(pub Vec<Ladder>);

impl LadderWord {
    pub fn empty() -> Self {
        LadderWord(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Ladder] {
        &self.0
    }

    pub fn concat(&self, other: &Self) -> Self {
        LadderWord([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// Excess after each prefix, the empty prefix included.
    pub fn prefix_excesses(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(0).chain(self.0.iter().scan(0, |acc, l| {
            *acc += l.step();
            Some(*acc)
        }))
    }

    /// All words of length `len`, in lexicographic order with `b₋ < b₊`.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = LadderWord> {
        (0u64..1 << len).map(move |bits| {
            LadderWord(
                (0..len)
                    .map(|j| {
                        if bits >> (len - 1 - j) & 1 == 1 {
                            Ladder::Plus
                        } else {
                            Ladder::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    pub fn all_upto(max_len: usize) -> impl Iterator<Item = LadderWord> {
        (0..=max_len).flat_map(Self::all_of_len)
    }
}

impl Ord for LadderWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LadderWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LadderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "_");
        }
        for l in &self.0 {
            match l {
                Ladder::Minus => write!(f, "b-")?,
                Ladder::Plus => write!(f, "b+")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LadderWord {
    type Err = Error;

    /// Accepts `b-`/`b+` tokens or the short forms `-`/`+`; `_` or the
    /// empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "_" {
            return Ok(LadderWord::empty());
        }
        let mut out = vec![];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix('b').unwrap_or(rest);
            match rest.chars().next() {
                Some('-') => out.push(Ladder::Minus),
                Some('+') => out.push(Ladder::Plus),
                _ => return Err(Error::UnknownLetter(rest.to_string())),
            }
            rest = &rest[1..];
        }
        Ok(LadderWord(out))
    }
}

/// `π_e(w)`: creations minus annihilations.
pub fn excess(w: &LadderWord) -> i64 {
    w.0.iter().map(|l| l.step()).sum()
}

/// Whether `w ∈ W_{n→m}`: excess `m − n` and no prefix below `−n`.
pub fn in_transporter(w: &LadderWord, n: usize, m: usize) -> bool {
    excess(w) == m as i64 - n as i64 && w.prefix_excesses().all(|e| e >= -(n as i64))
}

/// `W_{n→m}^{(i)}` in lexicographic order.
pub fn enumerate_transporter(n: usize, m: usize, i: usize) -> Vec<LadderWord> {
    LadderWord::all_of_len(i)
        .filter(|w| in_transporter(w, n, m))
        .collect()
}

/// How a weight sequence continues past its explicit entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Constant(Rational),
    /// `a·n + b`
    Linear(Rational, Rational),
    /// Independent small nonzero rationals drawn from a seeded generator.
    Random(u64),
}

impl Tail {
    fn at(&self, n: usize) -> Rational {
        match self {
            Tail::Constant(c) => c.clone(),
            Tail::Linear(a, b) => a.mul(&Rational::from_integer(n as i64)).add(b),
            Tail::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(n as u64);
                let p: i64 = rng.gen_range(1..=3);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                Rational::new(sign * p, rng.gen_range(1..=3))
            }
        }
    }
}

/// One weight sequence indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub explicit: Vec<Rational>,
    pub tail: Tail,
}

impl Weights {
    pub fn constant(c: Rational) -> Self {
        Weights {
            explicit: vec![],
            tail: Tail::Constant(c),
        }
    }

    pub fn at(&self, n: usize) -> Rational {
        assert!(n >= 1, "weights are indexed from 1");
        self.explicit
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| self.tail.at(n))
    }
}

/// Annihilation weights `αₙ` and creation weights `βₙ`, `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub name: String,
    pub alpha: Weights,
    pub beta: Weights,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsJson {
    #[serde(default)]
    values: Vec<String>,
    #[serde(default)]
    tail: Option<TailJson>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum TailJson {
    Constant(String),
    Linear([String; 2]),
    Random(u64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightSystemJson {
    #[serde(default)]
    name: Option<String>,
    alpha: WeightsJson,
    beta: WeightsJson,
}

impl WeightsJson {
    fn build(self) -> Result<Weights> {
        let explicit = self
            .values
            .iter()
            .map(|s| Rational::parse(s))
            .collect::<Result<_>>()?;
        let tail = match self.tail {
            None => Tail::Constant(Rational::one()),
            Some(TailJson::Constant(c)) => Tail::Constant(Rational::parse(&c)?),
            Some(TailJson::Linear([a, b])) => {
                Tail::Linear(Rational::parse(&a)?, Rational::parse(&b)?)
            }
            Some(TailJson::Random(seed)) => Tail::Random(seed),
        };
        Ok(Weights { explicit, tail })
    }
}

impl WeightSystem {
    /// `αₙ = βₙ = 1`.
    pub fn unit() -> Self {
        WeightSystem {
            name: "unit".into(),
            alpha: Weights::constant(Rational::one()),
            beta: Weights::constant(Rational::one()),
        }
    }

    /// `αₙ = n`, `βₙ = 1`.
    pub fn boson() -> Self {
        WeightSystem {
            name: "boson".into(),
            alpha: Weights {
                explicit: vec![],
                tail: Tail::Linear(Rational::one(), Rational::zero()),
            },
            beta: Weights::constant(Rational::one()),
        }
    }

    /// Small nonzero rationals, reproducible from the seed.
    pub fn random(seed: u64) -> Self {
        WeightSystem {
            name: format!("random:{seed}"),
            alpha: Weights {
                explicit: vec![],
                tail: Tail::Random(seed.wrapping_mul(2)),
            },
            beta: Weights {
                explicit: vec![],
                tail: Tail::Random(seed.wrapping_mul(2).wrapping_add(1)),
            },
        }
    }

    /// `unit`, `boson`, `random:<seed>`, or a JSON object
    /// `{"alpha": {"values": [...], "tail": {...}}, "beta": {...}}` where the
    /// tail is `{"constant": "c"}`, `{"linear": ["a", "b"]}` (`a·n + b`) or
    /// `{"random": seed}`, defaulting to the constant 1.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "unit" => return Ok(Self::unit()),
            "boson" => return Ok(Self::boson()),
            _ => {}
        }
        if let Some(seed) = t.strip_prefix("random:") {
            let seed = seed
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("bad seed {seed:?}")))?;
            return Ok(Self::random(seed));
        }
        if t.starts_with('{') {
            let raw: WeightSystemJson =
                serde_json::from_str(t).map_err(|e| Error::InvalidWeights(e.to_string()))?;
            return Ok(WeightSystem {
                name: raw.name.unwrap_or_else(|| "custom".into()),
                alpha: raw.alpha.build()?,
                beta: raw.beta.build()?,
            });
        }
        Err(Error::InvalidWeights(format!("unknown preset {t:?}")))
    }

    pub fn alpha(&self, n: usize) -> Rational {
        self.alpha.at(n)
    }

    pub fn beta(&self, n: usize) -> Rational {
        self.beta.at(n)
    }

    /// Replaces `β_index`.
    pub fn with_beta(mut self, index: usize, value: Rational) -> Self {
        assert!(index >= 1, "weights are indexed from 1");
        while self.beta.explicit.len() < index {
            let next = self.beta.at(self.beta.explicit.len() + 1);
            self.beta.explicit.push(next);
        }
        self.beta.explicit[index - 1] = value;
        self
    }

    /// Whether `α₁..α_upto` and `β₁..β_upto` are all nonzero.
    pub fn all_nonzero(&self, upto: usize) -> bool {
        (1..=upto).all(|i| !self.alpha(i).is_zero() && !self.beta(i).is_zero())
    }
}

/// The level and weight of `eₙ.w`; `None` when the action vanishes.
pub fn act(n: usize, w: &LadderWord, weights: &WeightSystem) -> Option<(usize, Rational)> {
    let mut level = n;
    let mut c = Rational::one();
    for l in &w.0 {
        match l {
            Ladder::Minus => {
                if level == 0 {
                    return None;
                }
                c = c.mul(&weights.alpha(level));
                level -= 1;
            }
            Ladder::Plus => {
                c = c.mul(&weights.beta(level + 1));
                level += 1;
            }
        }
        if c.is_zero() {
            return None;
        }
    }
    Some((level, c))
}

/// `⟨eₙ.w | eₘ⟩`.
pub fn matrix_element(n: usize, w: &LadderWord, m: usize, weights: &WeightSystem) -> Rational {
    match act(n, w, weights) {
        Some((level, c)) if level == m => c,
        _ => Rational::zero(),
    }
}

/// `ω_{n→m}^{(i)}`, summing `⟨eₙ.w | eₘ⟩` over all `2^i` words.
pub fn brute_force_omega(n: usize, m: usize, i: usize, weights: &WeightSystem) -> Rational {
    LadderWord::all_of_len(i)
        .map(|w| matrix_element(n, &w, m, weights))
        .fold(Rational::zero(), |acc, c| acc.add(&c))
}

/// The words of length `i` with `⟨eₙ.w | eₘ⟩ ≠ 0`, in lexicographic order.
pub fn nonzero_support(n: usize, m: usize, i: usize, weights: &WeightSystem) -> Vec<LadderWord> {
    LadderWord::all_of_len(i)
        .filter(|w| !matrix_element(n, w, m, weights).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LadderWord {
        s.parse().unwrap()
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess(&w("")), 0);
        assert_eq!(excess(&w("b+b+b-")), 1);
        assert_eq!(excess(&w("b-b-")), -2);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("+-").to_string(), "b+b-");
        assert_eq!(w("b+ b-"), w("+-"));
        assert_eq!(w("_").to_string(), "_");
        assert!("bx".parse::<LadderWord>().is_err());
    }

    #[test]
    fn transporter_membership() {
        assert!(in_transporter(&w("+-"), 0, 0));
        assert!(!in_transporter(&w("-+"), 0, 0));
        assert!(in_transporter(&w("-+"), 1, 1));
    }

    #[test]
    fn transporter_enumeration() {
        assert_eq!(enumerate_transporter(0, 0, 2), vec![w("+-")]);
        assert_eq!(enumerate_transporter(0, 0, 4), vec![w("+-+-"), w("++--")]);
        assert_eq!(enumerate_transporter(0, 1, 1), vec![w("+")]);
        assert!(enumerate_transporter(0, 0, 3).is_empty());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            brute_force_omega(0, 0, 2, &WeightSystem::unit()),
            Rational::one()
        );
        assert_eq!(
            brute_force_omega(0, 0, 4, &WeightSystem::boson()),
            Rational::from_integer(3)
        );
        let cut = WeightSystem::unit().with_beta(1, Rational::zero());
        assert_eq!(matrix_element(0, &w("+-"), 0, &cut), Rational::zero());
        assert!(in_transporter(&w("+-"), 0, 0));
    }

    #[test]
    fn boson_matrix_elements() {
        // e₀.b₊b₊b₋ = e₂.b₋ = 2·e₁
        let c = matrix_element(0, &w("++-"), 1, &WeightSystem::boson());
        assert_eq!(c, Rational::from_integer(2));
    }

    #[test]
    fn weight_presets() {
        let b = WeightSystem::boson();
        assert_eq!(b.alpha(5), Rational::from_integer(5));
        assert_eq!(b.beta(5), Rational::one());
        let r = WeightSystem::random(7);
        assert_eq!(r.alpha(3), WeightSystem::random(7).alpha(3));
        assert!(r.all_nonzero(20));
        let j = WeightSystem::parse(
            r#"{"alpha": {"values": ["2", "1/2"], "tail": {"linear": ["1", "-1"]}}, "beta": {"values": []}}"#,
        )
        .unwrap();
        assert_eq!(j.alpha(1), Rational::from_integer(2));
        assert_eq!(j.alpha(2), Rational::new(1, 2));
        assert_eq!(j.alpha(4), Rational::from_integer(3));
        assert_eq!(j.beta(9), Rational::one());
        assert!(WeightSystem::parse("fermion").is_err());
        assert!(WeightSystem::parse(r#"{"alpha": {}}"#).is_err());
    }
}
