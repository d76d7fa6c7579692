//! Truncated Laurent series in `q` with a guaranteed-order tag.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::dense::Dense;
use super::{clamp_order, EXACT_ORDER};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// A Laurent series in `q` known modulo `q^order`.
///
/// `order == EXACT_ORDER` marks an exact Laurent polynomial. Coefficients
/// below `order` that are not stored are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedLaurent {
    pub(crate) data: Dense,
    pub(crate) order: i64,
}

impl TruncatedLaurent {
    pub fn new(start: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        Self::from_dense(Dense::from_vec(start, coeffs), order)
    }

    pub(crate) fn from_dense(mut data: Dense, order: i64) -> Self {
        let order = clamp_order(order);
        data.truncate(order);
        TruncatedLaurent { data, order }
    }

    /// Exact Laurent polynomial.
    pub fn polynomial(start: i64, coeffs: Vec<Rational>) -> Self {
        Self::new(start, coeffs, EXACT_ORDER)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::from_dense(Dense::monomial(c, exp), EXACT_ORDER)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The exact zero series.
    pub fn zero() -> Self {
        Self::from_dense(Dense::zero(), EXACT_ORDER)
    }

    /// Zero modulo `q^order`.
    pub fn zero_to(order: i64) -> Self {
        Self::from_dense(Dense::zero(), order)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT_ORDER
    }

    /// No nonzero coefficient is known below the guaranteed order.
    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    /// Exact zero (zero with unbounded precision).
    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    /// Lowest exponent that can carry a nonzero coefficient, known or not.
    pub fn valuation(&self) -> i64 {
        self.data.low().unwrap_or(self.order)
    }

    pub fn coeff(&self, exp: i64) -> Result<Rational> {
        if exp >= self.order {
            return Err(Error::InsufficientPrecision {
                needed: exp + 1,
                available: self.order,
            });
        }
        Ok(self.data.coeff(exp))
    }

    /// Nonzero coefficients below the guaranteed order, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.data.terms()
    }

    pub fn with_order(&self, order: i64) -> Self {
        Self::from_dense(self.data.clone(), self.order.min(order))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_dense(self.data.scale(s), self.order)
    }

    /// Multiplication by `q^by`.
    pub fn shift(&self, by: i64) -> Self {
        Self::from_dense(self.data.shift(by), self.order.saturating_add(by))
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let order = (self.order.saturating_add(other.valuation()))
            .min(other.order.saturating_add(self.valuation()));
        let order = clamp_order(order);
        Self::from_dense(self.data.mul_below(&other.data, order), order)
    }

    /// Multiplicative inverse, valid to the guaranteed order `order - 2 * valuation`.
    pub fn invert(&self) -> Result<Self> {
        let Some(v) = self.data.low() else {
            return Err(Error::ZeroInverse);
        };
        if self.is_exact() && self.data.coeffs.len() == 1 {
            let c = &self.data.coeffs[0];
            return Ok(Self::monomial(c.recip(), -v));
        }
        if self.is_exact() {
            return Err(Error::InsufficientPrecision {
                needed: EXACT_ORDER,
                available: self.order,
            });
        }
        let rel = (self.order - v) as usize;
        let a0_inv = self.data.coeffs[0].recip();
        let a: Vec<Rational> = (0..rel).map(|i| self.data.coeff(v + i as i64)).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(rel);
        b.push(a0_inv.clone());
        for n in 1..rel {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !a[k].is_zero() && !b[n - k].is_zero() {
                    acc += &a[k] * &b[n - k];
                }
            }
            b.push(-acc * &a0_inv);
        }
        Ok(Self::new(-v, b, -v + rel as i64))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(acc)
    }

    /// The derivative `q d/dq`.
    pub fn delta(&self) -> Self {
        self.delta_pow(1)
    }

    /// `delta` applied `k` times: `c_m -> m^k c_m`.
    pub fn delta_pow(&self, k: u32) -> Self {
        Self::from_dense(
            self.data.map_exponents(|m, c| c * int(m).pow(k as i32)),
            self.order,
        )
    }

    /// Splits a primitive of `self` into the part with `m != 0` (divided by `m`)
    /// and the `q^0` coefficient, which a primitive must route to `t`.
    ///
    /// The constant part is returned as a series; it is fully unknown (zero to
    /// order 0) when the guaranteed order does not reach `q^0`.
    pub fn split_primitive(&self) -> (Self, Self) {
        let moving = Self::from_dense(
            self.data
                .map_exponents(|m, c| if m == 0 { Rational::zero() } else { c / int(m) }),
            self.order,
        );
        let constant = if self.order > 0 {
            Self::constant(self.data.coeff(0))
        } else {
            Self::zero_to(0)
        };
        (moving, constant)
    }

    /// Equality of all coefficients below `order`; errors when either side is not known that far.
    pub fn agrees_to(&self, other: &Self, order: i64) -> Result<bool> {
        let avail = self.order.min(other.order);
        if avail < order {
            return Err(Error::InsufficientPrecision {
                needed: order,
                available: avail,
            });
        }
        let mut a = self.data.clone();
        let mut b = other.data.clone();
        a.truncate(order);
        b.truncate(order);
        Ok(a == b)
    }

    /// Known nonzero coefficients as a map-like vector, for serialization.
    pub fn coefficient_list(&self) -> Vec<(i64, Rational)> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }
}

impl Add for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn add(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        TruncatedLaurent::from_dense(self.data.add(&rhs.data), self.order.min(rhs.order))
    }
}

impl Sub for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn sub(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        TruncatedLaurent::from_dense(self.data.sub(&rhs.data), self.order.min(rhs.order))
    }
}

impl Mul for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn mul(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        self.mul_series(rhs)
    }
}

impl Neg for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn neg(self) -> TruncatedLaurent {
        TruncatedLaurent::from_dense(self.data.neg(), self.order)
    }
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, super::render::Monomial)> = self
            .terms()
            .map(|(e, c)| (c.clone(), super::render::Monomial::q(e)))
            .collect();
        let order = (!self.is_exact()).then_some(self.order);
        f.write_str(&super::render::render_sum(&terms, order))
    }
}
