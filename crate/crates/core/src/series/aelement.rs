//! Polynomials in `t` over truncated Laurent series: the algebra `Q((q))[t]`
//! with `delta(t) = 1`.

use std::fmt;

use num_traits::{One, Zero};

use super::laurent::TruncatedLaurent;
use super::render::{render_sum, Monomial};
use super::EXACT_ORDER;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AElement {
    /// Coefficient of `t^i` at index `i`.
    t_coeffs: Vec<TruncatedLaurent>,
}

impl AElement {
    pub fn new(mut t_coeffs: Vec<TruncatedLaurent>) -> Self {
        while t_coeffs.last().is_some_and(TruncatedLaurent::is_exact_zero) {
            t_coeffs.pop();
        }
        AElement { t_coeffs }
    }

    pub fn zero() -> Self {
        AElement::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_series(TruncatedLaurent::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_series(TruncatedLaurent::constant(c))
    }

    pub fn from_series(f: TruncatedLaurent) -> Self {
        AElement::new(vec![f])
    }

    /// `c * q^e * t^i`, exact.
    pub fn monomial(c: Rational, q_exp: i64, t_deg: usize) -> Self {
        let mut v = vec![TruncatedLaurent::zero(); t_deg + 1];
        v[t_deg] = TruncatedLaurent::monomial(c, q_exp);
        AElement::new(v)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn t_coeffs(&self) -> &[TruncatedLaurent] {
        &self.t_coeffs
    }

    /// Coefficient of `t^i`.
    pub fn t_coeff(&self, i: usize) -> TruncatedLaurent {
        self.t_coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(TruncatedLaurent::zero)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.t_coeffs.len().checked_sub(1)
    }

    pub fn is_t_free(&self) -> bool {
        self.t_coeffs.len() <= 1
    }

    /// The `t^0` coefficient when the element has no `t` dependence.
    pub fn as_series(&self) -> Option<TruncatedLaurent> {
        self.is_t_free().then(|| self.t_coeff(0))
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.iter().all(TruncatedLaurent::is_zero)
    }

    /// Minimum guaranteed q-order over all `t`-coefficients.
    pub fn order(&self) -> i64 {
        self.t_coeffs
            .iter()
            .map(TruncatedLaurent::order)
            .min()
            .unwrap_or(EXACT_ORDER)
    }

    /// Lowest q-exponent over all `t`-coefficients.
    pub fn valuation(&self) -> i64 {
        self.t_coeffs
            .iter()
            .map(TruncatedLaurent::valuation)
            .min()
            .unwrap_or(EXACT_ORDER)
    }

    pub fn with_order(&self, order: i64) -> Self {
        AElement::new(self.t_coeffs.iter().map(|c| c.with_order(order)).collect())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&TruncatedLaurent, &TruncatedLaurent) -> TruncatedLaurent,
    ) -> Self {
        let n = self.t_coeffs.len().max(other.t_coeffs.len());
        AElement::new(
            (0..n)
                .map(|i| f(&self.t_coeff(i), &other.t_coeff(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        AElement::new(self.t_coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AElement::new(self.t_coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn mul_series(&self, f: &TruncatedLaurent) -> Self {
        AElement::new(self.t_coeffs.iter().map(|c| c * f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.t_coeffs.is_empty() || other.t_coeffs.is_empty() {
            return AElement::zero();
        }
        let n = self.t_coeffs.len() + other.t_coeffs.len() - 1;
        let mut out: Vec<Option<TruncatedLaurent>> = vec![None; n];
        for (i, a) in self.t_coeffs.iter().enumerate() {
            for (j, b) in other.t_coeffs.iter().enumerate() {
                let p = a * b;
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => &acc + &p,
                    None => p,
                });
            }
        }
        AElement::new(out.into_iter().map(Option::unwrap).collect())
    }

    /// `delta = q d/dq` with `delta(t) = 1`.
    pub fn delta(&self) -> Self {
        let n = self.t_coeffs.len();
        AElement::new(
            (0..n)
                .map(|i| {
                    let mut c = self.t_coeffs[i].delta();
                    if i + 1 < n {
                        c = &c + &self.t_coeffs[i + 1].scale(&int(i as i64 + 1));
                    }
                    c
                })
                .collect(),
        )
    }

    /// The canonical primitive: `q^m -> q^m / m` for `m != 0`, the `q^0` part
    /// raises the `t`-degree, and no element of `ker(delta)` is added.
    pub fn antiderivative(&self) -> Self {
        let n = self.t_coeffs.len();
        let mut residual = self.t_coeffs.clone();
        let mut out = vec![TruncatedLaurent::zero(); n + 1];
        for i in (0..n).rev() {
            let (moving, constant) = residual[i].split_primitive();
            out[i] = &out[i] + &moving;
            out[i + 1] =
                &out[i + 1] + &constant.scale(&Rational::new(1.into(), (i as i64 + 1).into()));
            if i > 0 {
                residual[i - 1] = &residual[i - 1] - &moving.scale(&int(i as i64));
            }
        }
        AElement::new(out)
    }

    /// `ev_0`: the coefficient of `q^0 t^0`.
    pub fn ev0(&self) -> Result<Rational> {
        let c = self.t_coeff(0);
        if c.order() <= 0 {
            return Err(Error::InsufficientPrecision {
                needed: 1,
                available: c.order(),
            });
        }
        c.coeff(0)
    }

    /// Equality of every `t`-coefficient below `order`.
    pub fn agrees_to(&self, other: &Self, order: i64) -> Result<bool> {
        let n = self.t_coeffs.len().max(other.t_coeffs.len());
        for i in 0..n {
            if !self.t_coeff(i).agrees_to(&other.t_coeff(i), order)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self` is a constant to its guaranteed order (no `t`, no `q^m`, `m != 0`).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.t_coeffs.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        let c = self.t_coeff(0);
        if c.terms().any(|(e, _)| e != 0) {
            return None;
        }
        Some(c.coeff(0).unwrap_or_else(|_| Rational::zero()))
    }

    pub(crate) fn render_terms(&self) -> Vec<(Rational, Monomial)> {
        let mut terms = Vec::new();
        for (i, c) in self.t_coeffs.iter().enumerate().rev() {
            for (e, v) in c.terms() {
                terms.push((
                    v.clone(),
                    Monomial {
                        q: e,
                        t: i as u32,
                        ..Default::default()
                    },
                ));
            }
        }
        terms
    }
}

impl From<TruncatedLaurent> for AElement {
    fn from(f: TruncatedLaurent) -> Self {
        AElement::from_series(f)
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.order();
        let order = (order < EXACT_ORDER).then_some(order);
        f.write_str(&render_sum(&self.render_terms(), order))
    }
}
