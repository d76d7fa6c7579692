//! Exact coefficient fields for shuffle elements: `Q` and `Q(q)`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, to_json_string, Rational};
use crate::series::TruncatedLaurent;

pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Expansion in `q` to at least the given order.
    fn to_series(&self, order: i64) -> Result<TruncatedLaurent>;
    fn to_json(&self) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_series(&self, _order: i64) -> Result<TruncatedLaurent> {
        Ok(TruncatedLaurent::constant(self.clone()))
    }
    fn to_json(&self) -> String {
        to_json_string(self)
    }
}

/// A rational function `num / den` in `q`, reduced with monic `den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::from_poly(UniPoly::zero()));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lead = den.leading();
        Ok(RatFunc {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn q() -> Self {
        RatFunc::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})", self.num.render("q"))
        } else {
            write!(f, "({})/({})", self.num.render("q"), self.den.render("q"))
        }
    }
}

impl Coefficient for RatFunc {
    fn from_rational(r: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(r))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn to_series(&self, order: i64) -> Result<TruncatedLaurent> {
        let num = TruncatedLaurent::polynomial(0, self.num.coeffs().to_vec());
        if self.den.is_one() {
            return Ok(num);
        }
        let den = TruncatedLaurent::polynomial(0, self.den.coeffs().to_vec());
        let v = den.valuation();
        let inv = den.with_order(order.max(0) + 2 * v + 1).invert()?;
        Ok(&num * &inv)
    }
    fn to_json(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ratfunc_reduces_and_expands() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = RatFunc::new(
            UniPoly::from_ints(&[-1, 0, 1]),
            UniPoly::from_ints(&[-1, 1]),
        )
        .unwrap();
        assert_eq!(r, RatFunc::from_poly(UniPoly::from_ints(&[1, 1])));
        // 1 / (1 - q) = 1 + q + q^2 + ...
        let g = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[1, -1])).unwrap();
        let s = g.to_series(5).unwrap();
        assert!(s.order() >= 5);
        for e in 0..5 {
            assert_eq!(s.coeff(e).unwrap(), int(1));
        }
        // 1 / (q - q^2) = q^-1 + 1 + q + ...
        let h = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[0, 1, -1])).unwrap();
        let s = h.to_series(3).unwrap();
        assert!(s.order() >= 3);
        assert_eq!(s.coeff(-1).unwrap(), int(1));
        assert_eq!(s.coeff(2).unwrap(), int(1));
    }
}
