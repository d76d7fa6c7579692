//! Decomposition of shuffle elements as polynomials in Lyndon words.

use std::collections::BTreeMap;

use num_traits::One;

use super::coeff::Coefficient;
use super::lyndon::lyndon_factorization;
use super::{Alphabet, ShuffleElement, Word};
use crate::rational::{factorial, Rational};

/// A monomial is a sorted list of `(Lyndon word, exponent)`; it stands for the
/// shuffle product of the listed words with multiplicity.
pub type LyndonMonomial = Vec<(Word, u32)>;

#[derive(Debug, Clone, PartialEq)]
pub struct LyndonPolynomial<C: Coefficient> {
    pub terms: BTreeMap<LyndonMonomial, C>,
}

impl<C: Coefficient> LyndonPolynomial<C> {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            let factors: Vec<String> = m
                .iter()
                .map(|(w, e)| {
                    let base = format!("({})", alphabet.compact(w));
                    if *e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            let body = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join(" ⧢ ")
            };
            let (negative, magnitude) = sign_split(c);
            let term = if magnitude == C::from_int(1) {
                body
            } else {
                format!("{magnitude}*{body}")
            };
            match (out.is_empty(), negative) {
                (true, false) => {}
                (true, true) => out.push('-'),
                (false, false) => out.push_str(" + "),
                (false, true) => out.push_str(" - "),
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .iter()
                    .map(|(w, e)| (alphabet.compact(w), serde_json::json!(e)))
                    .collect();
                serde_json::json!({ "monomial": exps, "coefficient": c.to_json() })
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

fn monomial_of(w: &[usize]) -> LyndonMonomial {
    let mut m: LyndonMonomial = Vec::new();
    for f in lyndon_factorization(w) {
        match m.iter_mut().find(|(g, _)| *g == f) {
            Some((_, e)) => *e += 1,
            None => m.push((f, 1)),
        }
    }
    m.sort();
    m
}

fn expand_monomial<C: Coefficient>(m: &LyndonMonomial) -> ShuffleElement<C> {
    let mut acc = ShuffleElement::one();
    for (w, e) in m {
        let lw = ShuffleElement::word(w.clone());
        for _ in 0..*e {
            acc = acc.shuffle(&lw);
        }
    }
    acc
}

/// Splits off a leading minus sign when `c` renders as the negation of `-c`.
fn sign_split<C: Coefficient>(c: &C) -> (bool, C) {
    let neg = c.neg();
    let text = c.to_string();
    if text.strip_prefix('-') == Some(neg.to_string().as_str()) {
        (true, neg)
    } else {
        (false, c.clone())
    }
}

/// Writes `x` uniquely as a polynomial in Lyndon words under the shuffle
/// product, eliminating the lexicographically largest word at each step.
pub fn radford_decompose<C: Coefficient>(x: &ShuffleElement<C>) -> LyndonPolynomial<C> {
    let mut rest = x.clone();
    let mut terms: BTreeMap<LyndonMonomial, C> = BTreeMap::new();
    while let Some((w, c)) = rest
        .terms()
        .iter()
        .next_back()
        .map(|(w, c)| (w.clone(), c.clone()))
    {
        let m = monomial_of(&w);
        let mult = m.iter().fold(num_bigint::BigInt::one(), |acc, (_, e)| {
            acc * factorial(*e as u64)
        });
        let a = c.mul(&C::from_rational(Rational::from_integer(mult).recip()));
        let expansion = expand_monomial::<C>(&m);
        debug_assert!(expansion.terms().keys().next_back() == Some(&w));
        rest = rest.sub(&expansion.scale(&a));
        let entry = terms.remove(&m).map_or(a.clone(), |prev| prev.add(&a));
        if !entry.is_zero() {
            terms.insert(m, entry);
        }
    }
    LyndonPolynomial { terms }
}

/// Expands a Lyndon polynomial back into words.
pub fn recompose<C: Coefficient>(p: &LyndonPolynomial<C>) -> ShuffleElement<C> {
    let mut acc = ShuffleElement::zero();
    for (m, c) in &p.terms {
        acc = acc.add(&expand_monomial::<C>(m).scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    type S = ShuffleElement<Rational>;

    #[test]
    fn small_decompositions() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let aa = radford_decompose(&S::word(vec![0, 0]));
        assert_eq!(aa.terms.len(), 1);
        assert_eq!(aa.terms[&vec![(vec![0], 2)]], frac(1, 2));

        let ba = radford_decompose(&S::word(vec![1, 0]));
        assert_eq!(ba.terms[&vec![(vec![0], 1), (vec![1], 1)]], int(1));
        assert_eq!(ba.terms[&vec![(vec![0, 1], 1)]], int(-1));
        assert_eq!(ba.terms.len(), 2);
        assert_eq!(ba.render(&ab), "(a) ⧢ (b) - (ab)");

        let lyn = radford_decompose(&S::word(vec![0, 1]));
        assert_eq!(lyn.render(&ab), "(ab)");
    }

    #[test]
    fn round_trip_all_short_words() {
        for len in 0..=4u32 {
            for code in 0..2usize.pow(len) {
                let w: Word = (0..len).map(|i| (code >> i) & 1).collect();
                let x = S::word(w);
                assert_eq!(recompose(&radford_decompose(&x)), x);
            }
        }
    }
}
