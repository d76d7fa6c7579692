//! Polynomials in `t` and `t_eps` over bivariate Laurent series in `(q, eps)`.

use std::collections::BTreeMap;
use std::fmt;

use super::aelement::AElement;
use super::bilaurent::BiLaurent;
use super::laurent::TruncatedLaurent;
use super::render::{render_sum, Monomial};
use super::EXACT_ORDER;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Keys are `(t-degree, t_eps-degree)`. A missing key is an exact zero; keys
/// holding an inexact zero are kept so that their precision stays visible.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AEpsElement {
    coeffs: BTreeMap<(u32, u32), BiLaurent>,
}

impl AEpsElement {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = ((u32, u32), BiLaurent)>) -> Self {
        let mut out = AEpsElement::default();
        for (k, v) in coeffs {
            out.accumulate(k, &v);
        }
        out
    }

    fn accumulate(&mut self, key: (u32, u32), value: &BiLaurent) {
        if value.is_exact_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&key) {
            Some(prev) => prev.add(value),
            None => value.clone(),
        };
        if !sum.is_exact_zero() {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn zero() -> Self {
        AEpsElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(int(1), 0, 0, 0, 0)
    }

    /// `c * q^m * eps^n * t^i * t_eps^j`, exact.
    pub fn monomial(c: Rational, q: i64, eps: i64, t: u32, t_eps: u32) -> Self {
        Self::from_coeffs([((t, t_eps), BiLaurent::monomial(c, q, eps))])
    }

    pub fn t() -> Self {
        Self::monomial(int(1), 0, 0, 1, 0)
    }

    pub fn t_eps() -> Self {
        Self::monomial(int(1), 0, 0, 0, 1)
    }

    pub fn from_bilaurent(b: BiLaurent) -> Self {
        Self::from_coeffs([((0, 0), b)])
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), BiLaurent> {
        &self.coeffs
    }

    /// Coefficient of `t^i t_eps^j`.
    pub fn coeff(&self, t: u32, t_eps: u32) -> BiLaurent {
        self.coeffs
            .get(&(t, t_eps))
            .cloned()
            .unwrap_or_else(BiLaurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(BiLaurent::is_zero)
    }

    pub fn q_order(&self) -> i64 {
        self.coeffs
            .values()
            .map(BiLaurent::q_order)
            .min()
            .unwrap_or(EXACT_ORDER)
    }

    pub fn eps_order(&self) -> i64 {
        self.coeffs
            .values()
            .map(BiLaurent::eps_order)
            .min()
            .unwrap_or(EXACT_ORDER)
    }

    /// Lowest eps-exponent that may occur, known or unknown.
    pub fn eps_tail(&self) -> i64 {
        self.coeffs
            .values()
            .map(BiLaurent::eps_tail)
            .min()
            .unwrap_or(EXACT_ORDER)
    }

    /// Drops every term of eps-degree `>= eps_order`.
    pub fn truncate_eps(&self, eps_order: i64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|(&k, v)| (k, v.truncate_eps(eps_order))),
        )
    }

    fn map(&self, f: impl Fn(&BiLaurent) -> BiLaurent) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&k, v)| (k, f(v))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.coeffs {
            out.accumulate(k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(BiLaurent::neg)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|v| v.scale(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = AEpsElement::zero();
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                out.accumulate((i1 + i2, j1 + j2), &a.mul(b));
            }
        }
        out
    }

    /// `delta = q d/dq` with `delta(t) = 1` and `eps`, `t_eps` inert.
    pub fn delta(&self) -> Self {
        let mut out = AEpsElement::zero();
        for (&(i, j), c) in &self.coeffs {
            out.accumulate((i, j), &c.delta());
            if i > 0 {
                out.accumulate((i - 1, j), &c.scale(&int(i as i64)));
            }
        }
        out
    }

    /// The canonical primitive, as for [`AElement::antiderivative`], with
    /// `eps` and `t_eps` treated as constants.
    pub fn antiderivative(&self) -> Self {
        let mut by_teps: BTreeMap<u32, BTreeMap<u32, BiLaurent>> = BTreeMap::new();
        for (&(i, j), c) in &self.coeffs {
            by_teps.entry(j).or_default().insert(i, c.clone());
        }
        let mut out = AEpsElement::zero();
        for (j, mut residual) in by_teps {
            while let Some((i, c)) = residual.pop_last() {
                let (moving, column) = c.split_primitive();
                out.accumulate((i, j), &moving);
                out.accumulate(
                    (i + 1, j),
                    &column.scale(&Rational::new(1.into(), (i as i64 + 1).into())),
                );
                if i > 0 {
                    let corr = moving.scale(&int(-(i as i64)));
                    let slot = residual.entry(i - 1).or_insert_with(BiLaurent::zero);
                    *slot = slot.add(&corr);
                }
            }
        }
        out
    }

    /// Substitutes `(q, t) -> (eps, t_eps)`.
    pub fn ev_eps(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|(&(i, j), c)| ((0, i + j), c.ev_eps())),
        )
    }

    /// Splits by eps-degree into the part with degree `>= 0` and the part
    /// with degree `< 0`.
    pub fn split_pm(&self) -> (Self, Self) {
        let mut plus = AEpsElement::zero();
        let mut minus = AEpsElement::zero();
        for (&k, c) in &self.coeffs {
            let (p, m) = c.split_pm();
            plus.accumulate(k, &p);
            minus.accumulate(k, &m);
        }
        (plus, minus)
    }

    /// The coefficient of `eps^0 t_eps^0`, as a polynomial in `t` over `Q((q))`.
    pub fn project_const(&self) -> Result<AElement> {
        let eo = self.eps_order();
        if eo <= 0 {
            return Err(Error::InsufficientPrecision {
                needed: 1,
                available: eo,
            });
        }
        let max_t = self
            .coeffs
            .keys()
            .filter(|(_, j)| *j == 0)
            .map(|(i, _)| *i)
            .max();
        let Some(max_t) = max_t else {
            return Ok(AElement::zero());
        };
        let mut out = Vec::with_capacity(max_t as usize + 1);
        for i in 0..=max_t {
            out.push(self.coeff(i, 0).eps_row(0)?);
        }
        Ok(AElement::new(out))
    }

    /// Whether every term is free of `q` and `t`: the shape of a
    /// counterterm.
    pub fn is_q_and_t_free(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&(i, _), c)| (i == 0 || c.is_zero()) && c.terms().all(|(m, _, _)| m == 0))
    }

    pub(crate) fn render_terms(&self) -> Vec<(Rational, Monomial)> {
        let mut terms = Vec::new();
        for (&(i, j), c) in &self.coeffs {
            for (m, n, v) in c.terms() {
                terms.push((
                    v.clone(),
                    Monomial {
                        q: m,
                        eps: n,
                        t: i,
                        t_eps: j,
                    },
                ));
            }
        }
        terms.sort_by(|(_, a), (_, b)| {
            (b.t + b.t_eps)
                .cmp(&(a.t + a.t_eps))
                .then(b.t.cmp(&a.t))
                .then(a.q.cmp(&b.q))
                .then(a.eps.cmp(&b.eps))
        });
        terms
    }
}

impl From<&AElement> for AEpsElement {
    fn from(a: &AElement) -> Self {
        AEpsElement::from_coeffs(
            a.t_coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), BiLaurent::from_q(c))),
        )
    }
}

impl From<&TruncatedLaurent> for AEpsElement {
    fn from(f: &TruncatedLaurent) -> Self {
        AEpsElement::from_bilaurent(BiLaurent::from_q(f))
    }
}

impl fmt::Display for AEpsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qo = self.q_order();
        let eo = self.eps_order();
        let mut s = render_sum(&self.render_terms(), None);
        if qo < EXACT_ORDER {
            s.push_str(&format!(" + O(q^{qo})"));
        }
        if eo < EXACT_ORDER {
            s.push_str(&format!(" + O(eps^{eo})"));
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn mono(c: i64, q: i64, eps: i64, t: u32, te: u32) -> AEpsElement {
        AEpsElement::monomial(int(c), q, eps, t, te)
    }

    #[test]
    fn ring_examples() {
        let a = mono(1, 1, 0, 0, 0).sub(&mono(1, 0, 1, 0, 0));
        let sq = a.mul(&a);
        let expected = mono(1, 2, 0, 0, 0)
            .add(&mono(-2, 1, 1, 0, 0))
            .add(&mono(1, 0, 2, 0, 0));
        assert_eq!(sq, expected);
        let b = AEpsElement::t().sub(&AEpsElement::t_eps());
        assert!(b.add(&b.neg()).coeffs().is_empty());
        assert_eq!(
            mono(1, -1, 0, 0, 0).mul(&a),
            AEpsElement::one().sub(&mono(1, -1, 1, 0, 0))
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(mono(1, 2, 0, 0, 0).delta(), mono(2, 2, 0, 0, 0));
        let b = AEpsElement::t().sub(&AEpsElement::t_eps());
        assert_eq!(b.delta(), AEpsElement::one());
        assert_eq!(
            mono(1, -1, 1, 1, 0).delta(),
            mono(-1, -1, 1, 1, 0).add(&mono(1, -1, 1, 0, 0))
        );
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(mono(1, -1, 0, 0, 0).antiderivative(), mono(-1, -1, 0, 0, 0));
        assert_eq!(AEpsElement::one().antiderivative(), AEpsElement::t());
        assert_eq!(
            mono(1, 0, 1, 1, 0).antiderivative(),
            AEpsElement::monomial(frac(1, 2), 0, 1, 2, 0)
        );
        let f = mono(5, 3, -1, 2, 1).add(&mono(1, 0, 0, 1, 1));
        assert_eq!(f.antiderivative().delta(), f);
    }

    #[test]
    fn ev_eps_examples() {
        let a = mono(1, 1, 0, 0, 0).sub(&mono(1, 0, 1, 0, 0));
        assert!(a.ev_eps().coeffs().is_empty());
        assert_eq!(AEpsElement::t().ev_eps(), AEpsElement::t_eps());
        assert_eq!(mono(1, -1, 0, 0, 0).ev_eps(), mono(1, 0, -1, 0, 0));
    }

    #[test]
    fn split_pm_examples() {
        let x = mono(-1, -1, 0, 0, 0).add(&mono(1, 0, -1, 0, 0));
        assert_eq!(x.split_pm(), (mono(-1, -1, 0, 0, 0), mono(1, 0, -1, 0, 0)));
        let y = AEpsElement::t().sub(&AEpsElement::t_eps());
        assert_eq!(y.split_pm(), (y.clone(), AEpsElement::zero()));
        let z = mono(1, 1, -1, 0, 0).sub(&AEpsElement::one());
        assert_eq!(z.split_pm(), (mono(-1, 0, 0, 0, 0), mono(1, 1, -1, 0, 0)));
    }

    #[test]
    fn project_const_examples() {
        let x = AEpsElement::t()
            .sub(&AEpsElement::t_eps())
            .add(&mono(1, -1, 1, 0, 0))
            .sub(&AEpsElement::one());
        assert_eq!(
            x.project_const().unwrap(),
            AElement::t().sub(&AElement::one())
        );
        let y = AEpsElement::t_eps().sub(&AEpsElement::t());
        assert_eq!(y.project_const().unwrap(), AElement::t().neg());
        assert_eq!(
            mono(5, 0, 0, 0, 0).project_const().unwrap(),
            AElement::constant(int(5))
        );
    }

    #[test]
    fn project_const_needs_eps_precision() {
        let rough = AEpsElement::from_bilaurent(BiLaurent::from_terms([], EXACT_ORDER, 0));
        assert!(matches!(
            rough.project_const(),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn display_orders_terms() {
        let x = AEpsElement::t()
            .sub(&AEpsElement::t_eps())
            .add(&mono(1, -1, 1, 0, 0))
            .sub(&AEpsElement::one());
        assert_eq!(x.to_string(), "t - t_eps + q^-1*eps - 1");
    }
}
