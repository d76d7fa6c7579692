//! Bivariate Laurent series in `q` and `eps`.
//!
//! A value is a finite set of known terms plus an unknown remainder confined to
//! `{m >= q_order, n >= eps_tail} ∪ {n >= eps_order, m >= q_tail}` for the
//! monomials `q^m eps^n`. The tails bound every exponent, known or unknown.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::dense::Dense;
use super::laurent::TruncatedLaurent;
use super::{clamp_order, EXACT_ORDER};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiLaurent {
    /// eps-exponent -> dense series in q.
    rows: BTreeMap<i64, Dense>,
    q_order: i64,
    eps_order: i64,
    q_tail: i64,
    eps_tail: i64,
}

impl BiLaurent {
    fn assemble(
        rows: BTreeMap<i64, Dense>,
        q_order: i64,
        eps_order: i64,
        q_tail: i64,
        eps_tail: i64,
    ) -> Self {
        let mut b = BiLaurent {
            rows,
            q_order: clamp_order(q_order),
            eps_order: clamp_order(eps_order),
            q_tail,
            eps_tail,
        };
        b.normalize();
        b
    }

    fn normalize(&mut self) {
        let (qo, eo) = (self.q_order, self.eps_order);
        self.rows.retain(|&n, row| {
            if n >= eo {
                return false;
            }
            row.truncate(qo);
            !row.is_zero()
        });
        let present_q = self.rows.values().filter_map(Dense::low).min();
        let present_e = self.rows.keys().next().copied();
        let mut qt = present_q.unwrap_or(EXACT_ORDER);
        let mut et = present_e.unwrap_or(EXACT_ORDER);
        if self.q_order < EXACT_ORDER {
            qt = qt.min(self.q_order);
            et = et.min(self.eps_tail);
        }
        if self.eps_order < EXACT_ORDER {
            et = et.min(self.eps_order);
            qt = qt.min(self.q_tail);
        }
        self.q_tail = qt;
        self.eps_tail = et;
    }

    pub fn zero() -> Self {
        Self::assemble(BTreeMap::new(), EXACT_ORDER, EXACT_ORDER, 0, 0)
    }

    pub fn monomial(c: Rational, q_exp: i64, eps_exp: i64) -> Self {
        let mut rows = BTreeMap::new();
        rows.insert(eps_exp, Dense::monomial(c, q_exp));
        Self::assemble(rows, EXACT_ORDER, EXACT_ORDER, q_exp, eps_exp)
    }

    /// Builds a value from explicit terms and orders.
    pub fn from_terms(
        terms: impl IntoIterator<Item = ((i64, i64), Rational)>,
        q_order: i64,
        eps_order: i64,
    ) -> Self {
        let mut rows: BTreeMap<i64, Dense> = BTreeMap::new();
        for ((m, n), c) in terms {
            rows.entry(n)
                .or_default()
                .add_scaled(&Dense::monomial(c, m), &int(1));
        }
        let qt = rows.values().filter_map(Dense::low).min().unwrap_or(0);
        let et = rows.keys().next().copied().unwrap_or(0);
        Self::assemble(rows, q_order, eps_order, qt.min(q_order), et.min(eps_order))
    }

    /// Embeds a series in `q` (no `eps` dependence).
    pub fn from_q(f: &TruncatedLaurent) -> Self {
        let mut rows = BTreeMap::new();
        rows.insert(0, f.data.clone());
        Self::assemble(rows, f.order, EXACT_ORDER, f.valuation(), 0)
    }

    /// Embeds a series in `eps` (no `q` dependence).
    pub fn from_eps(f: &TruncatedLaurent) -> Self {
        let rows: BTreeMap<i64, Dense> = f
            .terms()
            .map(|(e, c)| (e, Dense::monomial(c.clone(), 0)))
            .collect();
        Self::assemble(rows, EXACT_ORDER, f.order, 0, f.valuation())
    }

    pub fn q_order(&self) -> i64 {
        self.q_order
    }

    pub fn eps_order(&self) -> i64 {
        self.eps_order
    }

    pub fn q_tail(&self) -> i64 {
        self.q_tail
    }

    pub fn eps_tail(&self) -> i64 {
        self.eps_tail
    }

    /// No known nonzero term.
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.q_order >= EXACT_ORDER && self.eps_order >= EXACT_ORDER
    }

    /// `(q-exponent, eps-exponent, coefficient)` for every known nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rational)> {
        self.rows
            .iter()
            .flat_map(|(&n, row)| row.terms().map(move |(m, c)| (m, n, c)))
    }

    pub fn coeff(&self, q_exp: i64, eps_exp: i64) -> Result<Rational> {
        let unknown = (q_exp >= self.q_order && eps_exp >= self.eps_tail)
            || (eps_exp >= self.eps_order && q_exp >= self.q_tail);
        if unknown {
            let (needed, available) = if q_exp >= self.q_order {
                (q_exp + 1, self.q_order)
            } else {
                (eps_exp + 1, self.eps_order)
            };
            return Err(Error::InsufficientPrecision { needed, available });
        }
        Ok(self
            .rows
            .get(&eps_exp)
            .map(|r| r.coeff(q_exp))
            .unwrap_or_else(Rational::zero))
    }

    /// The coefficient of `eps^n` as a series in `q`.
    pub fn eps_row(&self, n: i64) -> Result<TruncatedLaurent> {
        if n >= self.eps_order && self.q_tail < EXACT_ORDER {
            return Err(Error::InsufficientPrecision {
                needed: n + 1,
                available: self.eps_order,
            });
        }
        let order = if n >= self.eps_tail {
            self.q_order
        } else {
            EXACT_ORDER
        };
        Ok(TruncatedLaurent::from_dense(
            self.rows.get(&n).cloned().unwrap_or_default(),
            order,
        ))
    }

    /// Caps the eps-precision at `eps_order`.
    pub fn truncate_eps(&self, eps_order: i64) -> Self {
        if eps_order >= self.eps_order {
            return self.clone();
        }
        Self::assemble(
            self.rows.clone(),
            self.q_order,
            eps_order,
            self.q_tail,
            self.eps_tail,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &int(1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &int(-1))
    }

    pub fn add_scaled(&self, other: &Self, s: &Rational) -> Self {
        let mut rows = self.rows.clone();
        for (&n, row) in &other.rows {
            rows.entry(n).or_default().add_scaled(row, s);
        }
        Self::assemble(
            rows,
            self.q_order.min(other.q_order),
            self.eps_order.min(other.eps_order),
            self.q_tail.min(other.q_tail),
            self.eps_tail.min(other.eps_tail),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let rows = self.rows.iter().map(|(&n, r)| (n, r.scale(s))).collect();
        Self::assemble(
            rows,
            self.q_order,
            self.eps_order,
            self.q_tail,
            self.eps_tail,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let q_order = clamp_order(
            self.q_order
                .saturating_add(other.q_tail)
                .min(other.q_order.saturating_add(self.q_tail)),
        );
        let eps_order = clamp_order(
            self.eps_order
                .saturating_add(other.eps_tail)
                .min(other.eps_order.saturating_add(self.eps_tail)),
        );
        let mut rows: BTreeMap<i64, Dense> = BTreeMap::new();
        for (&na, ra) in &self.rows {
            for (&nb, rb) in &other.rows {
                let n = na + nb;
                if n >= eps_order {
                    break;
                }
                let prod = ra.mul_below(rb, q_order);
                if !prod.is_zero() {
                    rows.entry(n).or_default().add_scaled(&prod, &int(1));
                }
            }
        }
        Self::assemble(
            rows,
            q_order,
            eps_order,
            self.q_tail.saturating_add(other.q_tail),
            self.eps_tail.saturating_add(other.eps_tail),
        )
    }

    /// Multiplication by `q^dq eps^de`.
    pub fn shift(&self, dq: i64, de: i64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|(&n, r)| (n + de, r.shift(dq)))
            .collect();
        Self::assemble(
            rows,
            self.q_order.saturating_add(dq),
            self.eps_order.saturating_add(de),
            self.q_tail.saturating_add(dq),
            self.eps_tail.saturating_add(de),
        )
    }

    /// `q d/dq`.
    pub fn delta(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|(&n, r)| (n, r.map_exponents(|m, c| c * int(m))))
            .collect();
        Self::assemble(
            rows,
            self.q_order,
            self.eps_order,
            self.q_tail,
            self.eps_tail,
        )
    }

    /// Splits a primitive into the `m != 0` part (divided by `m`) and the `q^0`
    /// column, which the caller routes to the next power of `t`.
    pub fn split_primitive(&self) -> (Self, Self) {
        let moving = self
            .rows
            .iter()
            .map(|(&n, r)| {
                (
                    n,
                    r.map_exponents(|m, c| if m == 0 { Rational::zero() } else { c / int(m) }),
                )
            })
            .collect();
        let moving = Self::assemble(
            moving,
            self.q_order,
            self.eps_order,
            self.q_tail,
            self.eps_tail,
        );
        let column: BTreeMap<i64, Dense> = self
            .rows
            .iter()
            .map(|(&n, r)| (n, Dense::monomial(r.coeff(0), 0)))
            .collect();
        let column_q_order = if self.q_order > 0 { EXACT_ORDER } else { 0 };
        let column = Self::assemble(column, column_q_order, self.eps_order, 0, self.eps_tail);
        (moving, column)
    }

    /// Substitutes `q -> eps`; the result has no `q` dependence.
    pub fn ev_eps(&self) -> Self {
        let mut rows: BTreeMap<i64, Dense> = BTreeMap::new();
        for (m, n, c) in self.terms() {
            rows.entry(m + n)
                .or_default()
                .add_scaled(&Dense::monomial(c.clone(), 0), &int(1));
        }
        let eps_order = self
            .q_order
            .saturating_add(self.eps_tail)
            .min(self.eps_order.saturating_add(self.q_tail));
        Self::assemble(
            rows,
            EXACT_ORDER,
            eps_order,
            0,
            self.q_tail.saturating_add(self.eps_tail),
        )
    }

    /// Splits by eps-degree: (`n >= 0`, `n < 0`).
    pub fn split_pm(&self) -> (Self, Self) {
        let plus: BTreeMap<i64, Dense> =
            self.rows.range(0..).map(|(&n, r)| (n, r.clone())).collect();
        let minus: BTreeMap<i64, Dense> =
            self.rows.range(..0).map(|(&n, r)| (n, r.clone())).collect();
        let plus = Self::assemble(
            plus,
            self.q_order,
            self.eps_order,
            self.q_tail,
            self.eps_tail.max(0),
        );
        // The negative part never meets the eps-truncation region once eps_order >= 0.
        let minus_eps_order = if self.eps_order >= 0 {
            EXACT_ORDER
        } else {
            self.eps_order
        };
        let minus = Self::assemble(
            minus,
            self.q_order,
            minus_eps_order,
            self.q_tail,
            self.eps_tail,
        );
        (plus, minus)
    }
}
