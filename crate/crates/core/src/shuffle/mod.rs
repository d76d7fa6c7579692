//! The shuffle algebra on words, Lyndon words, Radford's polynomial basis,
//! and evaluation of words as iterated primitives.

mod coeff;
mod lyndon;
mod radford;

use std::collections::BTreeMap;

pub use coeff::{Coefficient, RatFunc};
pub use lyndon::{is_lyndon, lyndon_factorization, lyndon_words, necklace_count};
pub use radford::{radford_decompose, recompose, LyndonPolynomial};

use crate::error::{Error, Result};
use crate::renorm::Engine;
use crate::series::AElement;

/// Letters are indices into an [`Alphabet`]; their numeric order is the
/// alphabet order.
pub type Word = Vec<usize>;

/// All interleavings of `a` and `b` preserving the order within each, with
/// multiplicity.
pub fn interleavings<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in interleavings(&a[1..], b) {
        w.insert(0, a[0].clone());
        out.push(w);
    }
    for mut w in interleavings(a, &b[1..]) {
        w.insert(0, b[0].clone());
        out.push(w);
    }
    out
}

/// Named letters in a fixed total order; registration order unless an
/// explicit order is supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!(
                    "letter {n} registered twice"
                )));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.names[letter]
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses `[a|b|c]`; `[]` is the empty word.
    pub fn parse_word(&self, src: &str) -> Result<Word> {
        let inner = src
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidArgument(format!("word {src:?} must look like [a|b]")))?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner
            .split('|')
            .map(|n| {
                self.letter(n.trim())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown letter {:?}", n.trim())))
            })
            .collect()
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&l| self.name(l)).collect();
        format!("[{}]", parts.join("|"))
    }

    /// Concatenated names, as used for Lyndon words: `ab`, `aab`.
    pub fn compact(&self, w: &[usize]) -> String {
        w.iter().map(|&l| self.name(l)).collect()
    }
}

/// A finite linear combination of words with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ShuffleElement<C: Coefficient> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> Default for ShuffleElement<C> {
    fn default() -> Self {
        ShuffleElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> ShuffleElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word.
    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, C::from_int(1))
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(prev) => prev.add(c),
            None => c.clone(),
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::from_int(1).neg()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.mul(s));
        }
        out
    }

    /// The bilinear extension of the word shuffle.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca.mul(cb);
                for w in interleavings(a, b) {
                    out.add_term(w, &c);
                }
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = alphabet.render_word(w);
                if *c == C::from_int(1) {
                    word
                } else {
                    format!("{c}*{word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The linear extension of `[f_1|...|f_n] -> I(f_1, ..., f_n)`, where letter
/// `i` stands for `letters[i]` and coefficients are expanded to `order`.
pub fn eval_words<C: Coefficient>(
    x: &ShuffleElement<C>,
    letters: &[AElement],
    order: i64,
) -> Result<AElement> {
    let mut engine = Engine::new(letters.to_vec(), x.max_len());
    eval_words_with(x, &mut engine, order)
}

/// [`eval_words`] reusing an existing engine and its memo.
pub fn eval_words_with<C: Coefficient>(
    x: &ShuffleElement<C>,
    engine: &mut Engine,
    order: i64,
) -> Result<AElement> {
    let mut acc = AElement::zero();
    for (w, c) in x.terms() {
        if w.iter().any(|&l| l >= engine.letter_count()) {
            return Err(Error::InvalidArgument(format!(
                "letter out of range in {w:?}"
            )));
        }
        let value = engine.iter_primitive(w)?;
        acc = acc.add(&value.mul_series(&c.to_series(order)?));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rational};

    type S = ShuffleElement<Rational>;

    #[test]
    fn small_shuffles() {
        let a = S::word(vec![0]);
        let b = S::word(vec![1]);
        let c = S::word(vec![2]);
        assert_eq!(a.shuffle(&b), S::word(vec![0, 1]).add(&S::word(vec![1, 0])));
        let ab_c = S::word(vec![0, 1]).shuffle(&c);
        let expected = S::word(vec![0, 1, 2])
            .add(&S::word(vec![0, 2, 1]))
            .add(&S::word(vec![2, 0, 1]));
        assert_eq!(ab_c, expected);
        assert_eq!(a.shuffle(&a), S::term(vec![0, 0], int(2)));
        assert_eq!(a.shuffle(&S::one()), a);
    }

    #[test]
    fn word_syntax_round_trips() {
        let abc = Alphabet::new(["f1", "f2", "f3"]).unwrap();
        let w = abc.parse_word("[f1|f3|f2]").unwrap();
        assert_eq!(w, vec![0, 2, 1]);
        assert_eq!(abc.render_word(&w), "[f1|f3|f2]");
        assert_eq!(abc.parse_word("[]").unwrap(), Vec::<usize>::new());
        assert!(abc.parse_word("[f4]").is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn evaluation_of_the_worked_example() {
        let letters = vec![
            AElement::monomial(int(1), -1, 0),
            AElement::monomial(int(1), 1, 0),
        ];
        let x = S::word(vec![0]).shuffle(&S::word(vec![1]));
        assert_eq!(
            eval_words(&x, &letters, 10).unwrap(),
            AElement::constant(int(-1))
        );
        assert_eq!(
            eval_words(&S::one(), &letters, 10).unwrap(),
            AElement::one()
        );
        let one_f = S::word(vec![0, 1]);
        let letters = vec![AElement::one(), AElement::monomial(int(1), 1, 0)];
        assert_eq!(
            eval_words(&one_f, &letters, 10).unwrap(),
            AElement::monomial(int(1), 1, 0)
        );
    }
}
