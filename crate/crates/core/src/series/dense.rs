//! Dense Laurent polynomials: the coefficient storage behind every series type.

use num_traits::{One, Zero};

use num_bigint::BigInt;

use crate::rational::{common_denominator, Rational};

/// Coefficients for exponents `start .. start + coeffs.len()`.
///
/// Normalized: both the first and the last stored coefficient are nonzero,
/// and the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct Dense {
    pub start: i64,
    pub coeffs: Vec<Rational>,
}

impl Dense {
    pub fn zero() -> Self {
        Dense::default()
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Dense::from_vec(exp, vec![c])
    }

    pub fn from_vec(start: i64, coeffs: Vec<Rational>) -> Self {
        let mut d = Dense { start, coeffs };
        d.normalize();
        d
    }

    pub fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// One past the highest exponent with a nonzero coefficient.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        if exp < self.start || exp >= self.end() {
            Rational::zero()
        } else {
            self.coeffs[(exp - self.start) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Drops every exponent `>= bound`.
    pub fn truncate(&mut self, bound: i64) {
        if self.is_zero() {
            return;
        }
        if bound <= self.start {
            *self = Dense::zero();
            return;
        }
        let keep = (bound - self.start) as usize;
        if keep < self.coeffs.len() {
            self.coeffs.truncate(keep);
            self.normalize();
        }
    }

    pub fn shift(&self, by: i64) -> Dense {
        if self.is_zero() {
            return Dense::zero();
        }
        Dense {
            start: self.start + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Dense {
        if s.is_zero() || self.is_zero() {
            return Dense::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        Dense::from_vec(self.start, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add_scaled(&mut self, other: &Dense, s: &Rational) {
        if other.is_zero() || s.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.scale(s);
            return;
        }
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        if lo < self.start {
            let pad = (self.start - lo) as usize;
            let mut v = vec![Rational::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.start = lo;
        }
        if hi > self.end() {
            let extra = (hi - self.end()) as usize;
            self.coeffs
                .extend(std::iter::repeat_n(Rational::zero(), extra));
        }
        let off = (other.start - self.start) as usize;
        let unit = s.is_one();
        for (i, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if unit {
                self.coeffs[off + i] += c;
            } else {
                self.coeffs[off + i] += c * s;
            }
        }
        self.normalize();
    }

    pub fn add(&self, other: &Dense) -> Dense {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn neg(&self) -> Dense {
        self.scale(&-Rational::one())
    }

    /// Product keeping only exponents `< bound`.
    /// Integer numerators over the least common denominator.
    fn integer_form(&self, len: usize) -> (Vec<BigInt>, BigInt) {
        let coeffs = &self.coeffs[..len.min(self.coeffs.len())];
        let den = common_denominator(coeffs);
        let nums = coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    BigInt::zero()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (nums, den)
    }

    /// The product truncated below `bound`. The convolution runs over integer
    /// numerators so that each output coefficient is reduced once.
    pub fn mul_below(&self, other: &Dense, bound: i64) -> Dense {
        if self.is_zero() || other.is_zero() {
            return Dense::zero();
        }
        let start = self.start + other.start;
        if start >= bound {
            return Dense::zero();
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = full.min((bound - start) as usize);
        if self.coeffs.len() == 1 || other.coeffs.len() == 1 {
            let (single, many) = if self.coeffs.len() == 1 {
                (&self.coeffs[0], other)
            } else {
                (&other.coeffs[0], self)
            };
            let out = many.coeffs[..len].iter().map(|c| c * single).collect();
            return Dense::from_vec(start, out);
        }
        let (a, da) = self.integer_form(len);
        let (b, db) = other.integer_form(len);
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let lim = (len - i).min(b.len());
            for (j, y) in b[..lim].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Dense::from_vec(
            start,
            out.into_iter()
                .map(|n| Rational::new(n, den.clone()))
                .collect(),
        )
    }

    pub fn map_exponents(&self, f: impl Fn(i64, &Rational) -> Rational) -> Dense {
        Dense::from_vec(
            self.start,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        f(self.start + i as i64, c)
                    }
                })
                .collect(),
        )
    }
}
