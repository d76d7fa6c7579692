//! Quasimodular forms as polynomials in `E2` with meromorphic modular coefficients.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::modular::{generator_series, Generator, MeroModForm};
use crate::poly::UniPoly;
use crate::rational::{binomial, frac, int, Rational};
use crate::series::TruncatedLaurent;

/// `sum_r coeffs[r] * E2^r`, where `coeffs[r]` has weight `weight - 2r`.
/// Trailing zero coefficients are trimmed, so `depth` is the `E2`-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMForm {
    coeffs: Vec<MeroModForm>,
    weight: i64,
}

impl QMForm {
    pub fn new(coeffs: Vec<MeroModForm>, weight: i64) -> Result<Self> {
        for (r, c) in coeffs.iter().enumerate() {
            let expected = weight - 2 * r as i64;
            if c.weight() != expected {
                return Err(Error::WeightMismatch {
                    expected,
                    found: c.weight(),
                });
            }
        }
        Ok(Self::trimmed(coeffs, weight))
    }

    fn trimmed(mut coeffs: Vec<MeroModForm>, weight: i64) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QMForm { coeffs, weight }
    }

    pub fn zero(weight: i64) -> Self {
        QMForm {
            coeffs: Vec::new(),
            weight,
        }
    }

    pub fn one() -> Self {
        Self::from_modular(MeroModForm::one())
    }

    pub fn from_modular(f: MeroModForm) -> Self {
        let weight = f.weight();
        Self::trimmed(vec![f], weight)
    }

    pub fn e2() -> Self {
        Self::e2_power(MeroModForm::one(), 1)
    }

    /// `c * E2^r`.
    pub fn e2_power(c: MeroModForm, r: usize) -> Self {
        let weight = c.weight() + 2 * r as i64;
        let mut coeffs: Vec<MeroModForm> = (0..r)
            .map(|i| MeroModForm::zero(weight - 2 * i as i64))
            .collect();
        coeffs.push(c);
        Self::trimmed(coeffs, weight)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// The `E2`-degree; zero for the zero form.
    pub fn depth(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_modular(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[MeroModForm] {
        &self.coeffs
    }

    /// The coefficient of `E2^r`.
    pub fn coeff(&self, r: usize) -> MeroModForm {
        self.coeffs
            .get(r)
            .cloned()
            .unwrap_or_else(|| MeroModForm::zero(self.weight - 2 * r as i64))
    }

    /// The depth-0 part as a modular form.
    pub fn modular_part(&self) -> MeroModForm {
        self.coeff(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight,
                found: other.weight,
            });
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|r| self.coeff(r).add(&other.coeff(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::trimmed(coeffs, self.weight))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::trimmed(
            self.coeffs.iter().map(|f| f.scale_by(c)).collect(),
            self.weight,
        )
    }

    pub fn mul_modular(&self, f: &MeroModForm) -> Self {
        Self::trimmed(
            self.coeffs.iter().map(|c| c.mul(f)).collect(),
            self.weight + f.weight(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let weight = self.weight + other.weight;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(weight));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs: Vec<MeroModForm> = (0..n)
            .map(|r| MeroModForm::zero(weight - 2 * r as i64))
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b))?;
            }
        }
        Ok(Self::trimmed(coeffs, weight))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `sum_r expand(coeff_r) * expand(E2)^r`, with guaranteed order `order`.
    pub fn expand(&self, order: i64) -> TruncatedLaurent {
        if self.is_zero() {
            return TruncatedLaurent::zero_to(order);
        }
        // Coefficients may have poles at the cusp; widen the E2 precision so
        // the products keep the requested order.
        let low = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.v_infinity())
            .min()
            .unwrap_or(0)
            .min(0);
        let e2 = generator_series(Generator::E2, order - low);
        let mut acc = TruncatedLaurent::zero_to(order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &e2) + &c.expand(order);
        }
        acc.with_order(order)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e2 = match r {
                0 => None,
                1 => Some("E2".to_string()),
                _ => Some(format!("E2^{r}")),
            };
            let text = c.render();
            let part = match e2 {
                None => text,
                Some(e2) if *c == MeroModForm::one() => e2,
                Some(e2) if *c == MeroModForm::one().neg() => format!("-{e2}"),
                Some(e2) if text.contains(['+', '/']) || text[1..].contains('-') => {
                    format!("({text}) * {e2}")
                }
                Some(e2) => format!("{text} * {e2}"),
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl From<MeroModForm> for QMForm {
    fn from(f: MeroModForm) -> Self {
        Self::from_modular(f)
    }
}

impl fmt::Display for QMForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `theta(c) = delta(c) - (w/12) E2 c`, a meromorphic modular form of weight `w + 2`.
pub fn theta(c: &MeroModForm) -> Result<MeroModForm> {
    let w = c.weight();
    if c.is_zero() {
        return Ok(MeroModForm::zero(w + 2));
    }
    let (a, b, _) = c.exponents();
    let mut out = MeroModForm::zero(w + 2);
    if a != 0 {
        // theta E4 = -E6 / 3
        let t = c.mul(&MeroModForm::monomial(frac(-a, 3), -1, 1, 0));
        out = out.add(&t)?;
    }
    if b != 0 {
        // theta E6 = -E4^2 / 2
        let t = c.mul(&MeroModForm::monomial(frac(-b, 2), 2, -1, 0));
        out = out.add(&t)?;
    }
    let (num, den) = (c.r_num(), c.r_den());
    if !num.is_one() || !den.is_one() {
        // d/dj (N/D) = (N'D - ND') / D^2, and delta j = -E4^2 E6 / Delta.
        let dn = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
        let (_, _, d) = c.exponents();
        let t = MeroModForm::from_parts(-c.scale().clone(), a + 2, b + 1, d - 1, dn, den.mul(den))?;
        out = out.add(&t)?;
    }
    Ok(out)
}

/// `delta = q d/dq` on quasimodular forms, via `delta c = theta c + (w/12) E2 c`
/// and `delta E2 = (E2^2 - E4) / 12`.
pub fn qm_delta(f: &QMForm) -> Result<QMForm> {
    let k = f.weight;
    let n = f.coeffs.len() + 1;
    let mut coeffs: Vec<MeroModForm> = (0..n)
        .map(|r| MeroModForm::zero(k + 2 - 2 * r as i64))
        .collect();
    let e4 = MeroModForm::e4();
    for (r, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        coeffs[r] = coeffs[r].add(&theta(c)?)?;
        let up = frac(c.weight() + r as i64, 12);
        coeffs[r + 1] = coeffs[r + 1].add(&c.scale_by(&up))?;
        if r > 0 {
            let down = c.mul(&e4).scale_by(&frac(-(r as i64), 12));
            coeffs[r - 1] = coeffs[r - 1].add(&down)?;
        }
    }
    Ok(QMForm::trimmed(coeffs, k + 2))
}

/// `delta` applied `n` times.
pub fn qm_delta_pow(f: &QMForm, n: usize) -> Result<QMForm> {
    let mut g = f.clone();
    for _ in 0..n {
        g = qm_delta(&g)?;
    }
    Ok(g)
}

/// The coefficient functions `f_s = sum_{r >= s} C(r, s) coeff_r E2^(r - s)`.
pub fn coefficient_functions(f: &QMForm) -> Vec<QMForm> {
    let p = f.depth();
    if f.is_zero() {
        return vec![f.clone()];
    }
    (0..=p)
        .map(|s| {
            let coeffs = (s..=p)
                .map(|r| f.coeffs[r].scale_by(&Rational::from(binomial(r as u64, s as u64))))
                .collect();
            QMForm::trimmed(coeffs, f.weight - 2 * s as i64)
        })
        .collect()
}

/// `delta j = -E4^2 E6 / Delta` in factored form.
pub fn delta_j() -> MeroModForm {
    MeroModForm::monomial(int(-1), 2, 1, -1)
}

/// A modular form `N(j)/D(j)` for integer coefficient lists.
pub fn j_rational(num: &[i64], den: &[i64]) -> Result<MeroModForm> {
    MeroModForm::rational_in_j(UniPoly::from_ints(num), UniPoly::from_ints(den))
}
