//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{common_denominator, divisors, int, Rational};

/// Coefficients from degree 0 upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        UniPoly::new(vec![-c.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.deg() == 0 && !a.is_zero() || b.deg() == 0 && !b.is_zero() {
            return UniPoly::one();
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Largest `m` with `(x - c)^m | self`; `self` must be nonzero.
    pub fn root_multiplicity(&self, c: &Rational) -> u32 {
        let lin = UniPoly::linear_root(c);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Some(q) => {
                    p = q;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    /// Integer coefficients proportional to `self`.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let d = common_denominator(&self.coeffs);
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
            .collect()
    }

    /// Distinct rational roots with multiplicities, and the cofactor free of
    /// rational roots. Candidates come from the rational root test when the
    /// extreme coefficients factor by trial division, and otherwise from
    /// numerical approximations of the roots; every root is confirmed exactly.
    pub fn rational_roots(&self) -> (Vec<(Rational, u32)>, UniPoly) {
        let mut rest = self.monic();
        let mut roots = Vec::new();
        let zero_mult = rest.root_multiplicity(&Rational::zero());
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
            rest = rest
                .div_exact(&UniPoly::x().pow(zero_mult))
                .expect("x^m divides");
        }
        if rest.deg() == 0 {
            return (roots, rest);
        }
        let candidates = rest
            .root_test_candidates()
            .unwrap_or_else(|| rest.numerical_candidates());
        for c in candidates {
            if rest.deg() == 0 {
                break;
            }
            if rest.eval(&c).is_zero() {
                let m = rest.root_multiplicity(&c);
                rest = rest
                    .div_exact(&UniPoly::linear_root(&c).pow(m))
                    .expect("root power divides");
                roots.push((c, m));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    /// `±p/q` with `p | a_0` and `q | a_n`, or `None` if either is too large.
    fn root_test_candidates(&self) -> Option<Vec<Rational>> {
        let ints = self.primitive_integer_coeffs();
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().expect("nonconstant"))?;
        let mut out = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rational::new(p.clone(), q.clone());
                out.push(-r.clone());
                out.push(r);
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    /// Continued-fraction convergents of the nearly real complex roots of the
    /// square-free part.
    fn numerical_candidates(&self) -> Vec<Rational> {
        let g = self.gcd(&self.derivative());
        let sf = self.div_exact(&g).expect("gcd divides").monic();
        let mut out = Vec::new();
        for z in sf.approximate_roots() {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            out.extend(convergents(z.re));
        }
        out.sort();
        out.dedup();
        out
    }

    /// All complex roots by Durand-Kerner iteration in double precision.
    fn approximate_roots(&self) -> Vec<Complex64> {
        let n = self.deg();
        let lead = self.leading().to_f64().unwrap_or(1.0);
        let a: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::MAX) / lead)
            .collect();
        if a.iter().any(|x| !x.is_finite()) {
            return Vec::new();
        }
        let radius = 1.0 + a[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let eval = |z: Complex64| {
            a.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        };
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
        for _ in 0..2000 {
            let mut change = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        den *= z[i] - zj;
                    }
                }
                if den.norm() == 0.0 {
                    continue;
                }
                let step = eval(z[i]) / den;
                z[i] -= step;
                change = change.max(step.norm() / (1.0 + z[i].norm()));
            }
            if change < 1e-14 {
                break;
            }
        }
        z
    }

    /// Renders in the variable `var`, highest degree first: `j^2 - 5`.
    pub fn render(&self, var: &str) -> String {
        self.render_with(var, " + ", " - ")
    }

    /// Renders without spaces around the signs: `j^2-5`.
    pub fn render_compact(&self, var: &str) -> String {
        self.render_with(var, "+", "-")
    }

    fn render_with(&self, var: &str, plus: &str, minus: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else if a.denom().is_one() {
                format!("{}*{mono}", a.numer())
            } else {
                format!("{}*{mono}/{}", a.numer(), a.denom())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { minus } else { plus });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Continued-fraction convergents of `x` while the expansion stays accurate.
fn convergents(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() || x.abs() > 1e15 {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..24 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-9 || k1 > BigInt::from(1_000_000_000i64) {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UniPoly::from_ints(&[1, 1]); // x + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = UniPoly::from_ints(&[2, 3, 1]); // (x+1)(x+2)
        assert_eq!(a.gcd(&c), b);
        assert_eq!(a.gcd(&UniPoly::from_ints(&[5])), UniPoly::one());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) (x^2 - 5)
        let p = UniPoly::linear_root(&frac(1, 2))
            .pow(2)
            .mul(&UniPoly::from_ints(&[3, 1]))
            .mul(&UniPoly::from_ints(&[-5, 0, 1]));
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(int(-3), 1), (frac(1, 2), 2)]);
        assert_eq!(rest, UniPoly::from_ints(&[-5, 0, 1]));
    }

    #[test]
    fn rational_roots_beyond_trial_division() {
        // The constant term is far too large to factor by trial division.
        let big = UniPoly::new(vec![int(-10_000_000_000_007), int(0), int(1)]);
        let p = UniPoly::linear_root(&int(1726))
            .pow(2)
            .mul(&UniPoly::linear_root(&frac(-3, 7)))
            .mul(&big);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(frac(-3, 7), 1), (int(1726), 2)]);
        assert_eq!(rest, big);
    }

    #[test]
    fn render_in_j() {
        assert_eq!(UniPoly::from_ints(&[-5, 0, 1]).render("j"), "j^2 - 5");
        assert_eq!(UniPoly::from_ints(&[-864, 1]).render("j"), "j - 864");
        assert_eq!(
            UniPoly::new(vec![frac(1, 2), int(-3)]).render("q"),
            "-3*q + 1/2"
        );
        assert_eq!(UniPoly::from_ints(&[-5, 0, 1]).render_compact("j"), "j^2-5");
    }
}
