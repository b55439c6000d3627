//! JSON encodings.
//!
//! Scalars are written as strings in the literal syntax of their semiring
//! (`"3/4"`, `"-inf"`, `"true"`); on input JSON numbers and booleans are
//! accepted as well.
//!
//! A representation:
//!
//! ```json
//! {"semiring": "rat", "alphabet": ["a", "b"], "dim": 2,
//!  "lambda": ["1", "0"], "gamma": ["0", "1"],
//!  "mu": {"a": [["0", "1"], ["0", "0"]], "b": [["0", "0"], ["0", "0"]]}}
//! ```
//!
//! A truncated series lists its nonzero coefficients:
//!
//! ```json
//! {"semiring": "nat", "alphabet": ["a"], "maxlen": 3,
//!  "terms": [{"word": "_", "coeff": "1"}, {"word": "a", "coeff": "2"}]}
//! ```

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::LetterAssignment;
use crate::fock::TransferSeries;
use crate::linrep::LinRep;
use crate::matrix::Matrix;
use crate::semiring::{Semiring, SemiringKind};
use crate::series::TruncatedSeries;
use crate::words::{Alphabet, Polynomial};

fn err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn scalar_to_json<K: Semiring>(c: &K) -> Value {
    Value::String(c.to_string())
}

pub fn scalar_from_json<K: Semiring>(v: &Value) -> Result<K> {
    match v {
        Value::String(s) => K::parse(s),
        Value::Number(n) => K::parse(&n.to_string()),
        Value::Bool(b) => K::parse(if *b { "true" } else { "false" }),
        other => Err(err(format!("expected a scalar, found {other}"))),
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| err(format!("missing field {name:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| err(format!("{what} must be an array")))
}

fn vector<K: Semiring>(v: &Value, what: &str) -> Result<Vec<K>> {
    array(v, what)?.iter().map(scalar_from_json).collect()
}

fn alphabet_to_json(a: &Alphabet) -> Value {
    json!(a.letters())
}

pub fn alphabet_from_json(v: &Value) -> Result<Alphabet> {
    let names = array(v, "alphabet")?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| err("alphabet letters must be strings"))
        })
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(names)
}

/// The `"semiring"` tag of a document, if present.
pub fn semiring_of(v: &Value) -> Result<Option<SemiringKind>> {
    match v.get("semiring") {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.parse()?)),
        Some(_) => Err(err("semiring must be a string")),
    }
}

fn check_semiring<K: Semiring>(v: &Value) -> Result<()> {
    match semiring_of(v)? {
        Some(kind) if kind != K::KIND => Err(Error::DomainMismatch {
            left: kind.name().to_string(),
            right: K::KIND.name().to_string(),
        }),
        _ => Ok(()),
    }
}

fn matrix_to_json<K: Semiring>(m: &Matrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn matrix_from_json<K: Semiring>(v: &Value, n: usize) -> Result<Matrix<K>> {
    let rows = array(v, "transition matrix")?
        .iter()
        .map(|r| vector(r, "matrix row"))
        .collect::<Result<Vec<_>>>()?;
    if n == 0 && rows.is_empty() {
        return Ok(Matrix::zero(0, 0));
    }
    let m = Matrix::from_rows(rows)?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "transition matrix is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

pub fn rep_to_json<K: Semiring>(r: &LinRep<K>) -> Value {
    let mut mu = Map::new();
    for (x, m) in r.mus().iter().enumerate() {
        mu.insert(r.alphabet().name(x).to_string(), matrix_to_json(m));
    }
    json!({
        "semiring": K::KIND.name(),
        "alphabet": alphabet_to_json(r.alphabet()),
        "dim": r.dim(),
        "lambda": r.lambda().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "gamma": r.gamma().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "mu": Value::Object(mu),
    })
}

/// Letters missing from `"mu"` get the zero matrix; `"dim"` is optional
/// but checked when present.
pub fn rep_from_json<K: Semiring>(v: &Value) -> Result<LinRep<K>> {
    check_semiring::<K>(v)?;
    let alphabet = alphabet_from_json(field(v, "alphabet")?)?;
    let lambda: Vec<K> = vector(field(v, "lambda")?, "lambda")?;
    let gamma: Vec<K> = vector(field(v, "gamma")?, "gamma")?;
    let n = lambda.len();
    if let Some(d) = v.get("dim") {
        if d.as_u64() != Some(n as u64) {
            return Err(Error::Dimension(format!(
                "dim is {d}, lambda has {n} entries"
            )));
        }
    }
    let mu_obj = field(v, "mu")?
        .as_object()
        .ok_or_else(|| err("mu must map letters to matrices"))?;
    for name in mu_obj.keys() {
        alphabet.index_of(name)?;
    }
    let mu = alphabet
        .letters()
        .iter()
        .map(|name| match mu_obj.get(name) {
            Some(m) => matrix_from_json(m, n),
            None => Ok(Matrix::zero(n, n)),
        })
        .collect::<Result<_>>()?;
    LinRep::new(alphabet, lambda, mu, gamma)
}

fn terms_to_json<'a, K: Semiring>(
    alphabet: &Alphabet,
    terms: impl Iterator<Item = (crate::words::Word, &'a K)>,
) -> Value {
    Value::Array(
        terms
            .map(|(w, c)| json!({"word": alphabet.render(&w), "coeff": scalar_to_json(c)}))
            .collect(),
    )
}

pub fn series_to_json<K: Semiring>(s: &TruncatedSeries<K>) -> Value {
    json!({
        "semiring": K::KIND.name(),
        "alphabet": alphabet_to_json(s.alphabet()),
        "maxlen": s.max_len(),
        "terms": terms_to_json(s.alphabet(), s.support()),
    })
}

fn polynomial_from_terms<K: Semiring>(v: &Value, alphabet: &Alphabet) -> Result<Polynomial<K>> {
    let mut p = Polynomial::zero(alphabet.clone());
    for t in array(v, "terms")? {
        let word = field(t, "word")?
            .as_str()
            .ok_or_else(|| err("word must be a string"))?;
        p.add_term(
            alphabet.parse_word(word)?,
            scalar_from_json(field(t, "coeff")?)?,
        )?;
    }
    Ok(p)
}

pub fn series_from_json<K: Semiring>(v: &Value) -> Result<TruncatedSeries<K>> {
    check_semiring::<K>(v)?;
    let alphabet = alphabet_from_json(field(v, "alphabet")?)?;
    let max_len = field(v, "maxlen")?
        .as_u64()
        .ok_or_else(|| err("maxlen must be a nonnegative integer"))? as usize;
    let p = polynomial_from_terms(field(v, "terms")?, &alphabet)?;
    if p.degree().is_some_and(|d| d > max_len) {
        return Err(err("a term is longer than maxlen"));
    }
    Ok(TruncatedSeries::from_polynomial(&p, max_len))
}

/// A letter assignment given by polynomial images:
///
/// ```json
/// {"alphabet": ["a", "b"], "images": {"x": [{"word": "ab", "coeff": "1"}]}}
/// ```
///
/// Letters of `source` without an image are sent to 0.
pub fn assignment_from_json<K: Semiring>(
    v: &Value,
    source: &Alphabet,
    max_len: usize,
) -> Result<LetterAssignment<K>> {
    check_semiring::<K>(v)?;
    let target = alphabet_from_json(field(v, "alphabet")?)?;
    let images = field(v, "images")?
        .as_object()
        .ok_or_else(|| err("images must map letters to term lists"))?;
    for name in images.keys() {
        source.index_of(name)?;
    }
    let series = source
        .letters()
        .iter()
        .map(|name| match images.get(name) {
            Some(terms) => Ok(TruncatedSeries::from_polynomial(
                &polynomial_from_terms(terms, &target)?,
                max_len,
            )),
            None => Ok(TruncatedSeries::zero(target.clone(), max_len)),
        })
        .collect::<Result<_>>()?;
    LetterAssignment::new(source.clone(), series)
}

pub fn transfer_to_json(t: &TransferSeries) -> Value {
    json!({ "coefficients": t.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>() })
}
