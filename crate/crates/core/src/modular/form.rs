//! Meromorphic modular forms in the canonical factored shape
//! `scale * E4^e4 * E6^e6 * Delta^eDelta * R_num(j) / R_den(j)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::generators::{generator_series, Generator};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, Rational};
use crate::series::TruncatedLaurent;

/// `R_num` and `R_den` are monic, coprime, and coprime to `j` and `j - 1728`;
/// those two factors are absorbed through `E4^3 = j Delta` and
/// `E6^2 = (j - 1728) Delta`. The zero form keeps its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeroModForm {
    scale: Rational,
    e4: i64,
    e6: i64,
    e_delta: i64,
    r_num: UniPoly,
    r_den: UniPoly,
    weight: i64,
}

fn j_minus_1728() -> UniPoly {
    UniPoly::from_ints(&[-1728, 1])
}

/// Removes every factor `p` from `r`, returning the reduced polynomial and the multiplicity.
fn strip(r: &UniPoly, p: &UniPoly) -> (UniPoly, i64) {
    let mut r = r.clone();
    let mut m = 0;
    while let Some(q) = r.div_exact(p) {
        r = q;
        m += 1;
    }
    (r, m)
}

impl MeroModForm {
    /// Canonicalizes `scale * E4^e4 * E6^e6 * Delta^eDelta * num(j) / den(j)`.
    pub fn from_parts(
        scale: Rational,
        e4: i64,
        e6: i64,
        e_delta: i64,
        num: UniPoly,
        den: UniPoly,
    ) -> Result<Self> {
        let weight = 4 * e4 + 6 * e6 + 12 * e_delta;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if scale.is_zero() || num.is_zero() {
            return Ok(MeroModForm::zero(weight));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let scale = scale * num.leading() / den.leading();
        let (num, den) = (num.monic(), den.monic());
        let (num, jn) = strip(&num, &UniPoly::x());
        let (den, jd) = strip(&den, &UniPoly::x());
        let (num, kn) = strip(&num, &j_minus_1728());
        let (den, kd) = strip(&den, &j_minus_1728());
        let dj = jn - jd;
        let dk = kn - kd;
        Ok(MeroModForm {
            scale,
            e4: e4 + 3 * dj,
            e6: e6 + 2 * dk,
            e_delta: e_delta - dj - dk,
            r_num: num,
            r_den: den,
            weight,
        })
    }

    pub fn monomial(scale: Rational, e4: i64, e6: i64, e_delta: i64) -> Self {
        Self::from_parts(scale, e4, e6, e_delta, UniPoly::one(), UniPoly::one())
            .expect("monomials are well formed")
    }

    pub fn zero(weight: i64) -> Self {
        MeroModForm {
            scale: Rational::zero(),
            e4: 0,
            e6: 0,
            e_delta: 0,
            r_num: UniPoly::one(),
            r_den: UniPoly::one(),
            weight,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn e4() -> Self {
        Self::monomial(int(1), 1, 0, 0)
    }

    pub fn e6() -> Self {
        Self::monomial(int(1), 0, 1, 0)
    }

    pub fn delta() -> Self {
        Self::monomial(int(1), 0, 0, 1)
    }

    pub fn j() -> Self {
        Self::monomial(int(1), 3, 0, -1)
    }

    /// A weight-0 rational function of `j`.
    pub fn rational_in_j(num: UniPoly, den: UniPoly) -> Result<Self> {
        Self::from_parts(Rational::one(), 0, 0, 0, num, den)
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// `(e4, e6, eDelta)`.
    pub fn exponents(&self) -> (i64, i64, i64) {
        (self.e4, self.e6, self.e_delta)
    }

    pub fn r_num(&self) -> &UniPoly {
        &self.r_num
    }

    pub fn r_den(&self) -> &UniPoly {
        &self.r_den
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    /// The cusp order `eDelta - deg R_num + deg R_den`.
    pub fn v_infinity(&self) -> i64 {
        self.e_delta - self.r_num.deg() as i64 + self.r_den.deg() as i64
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return MeroModForm::zero(self.weight + other.weight);
        }
        Self::from_parts(
            &self.scale * &other.scale,
            self.e4 + other.e4,
            self.e6 + other.e6,
            self.e_delta + other.e_delta,
            self.r_num.mul(&other.r_num),
            self.r_den.mul(&other.r_den),
        )
        .expect("nonzero denominators")
    }

    pub fn scale_by(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MeroModForm::zero(self.weight);
        }
        let mut out = self.clone();
        out.scale *= c;
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_by(&int(-1))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(MeroModForm {
            scale: self.scale.recip(),
            e4: -self.e4,
            e6: -self.e6,
            e_delta: -self.e_delta,
            r_num: self.r_den.clone(),
            r_den: self.r_num.clone(),
            weight: -self.weight,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = MeroModForm::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        if self.is_zero() && n > 0 {
            return Ok(MeroModForm::zero(self.weight * n));
        }
        Ok(acc)
    }

    /// Sum of two forms of equal weight.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(
            self.weight,
            [(Rational::one(), self), (Rational::one(), other)],
        )
    }

    /// `sum c_i f_i` over forms of weight `weight`, reduced once over a common
    /// denominator.
    pub fn linear_combination<'a>(
        weight: i64,
        terms: impl IntoIterator<Item = (Rational, &'a MeroModForm)>,
    ) -> Result<Self> {
        let mut live: Vec<(Rational, &MeroModForm)> = Vec::new();
        for (c, f) in terms {
            if f.weight != weight {
                return Err(Error::WeightMismatch {
                    expected: weight,
                    found: f.weight,
                });
            }
            if !c.is_zero() && !f.is_zero() {
                live.push((c, f));
            }
        }
        match live.len() {
            0 => return Ok(MeroModForm::zero(weight)),
            1 => return Ok(live[0].1.scale_by(&live[0].0)),
            _ => {}
        }
        // Equal weights force e4 to agree mod 3 and e6 mod 2; the surplus is
        // rewritten through E4^3 = j Delta and E6^2 = (j - 1728) Delta.
        let e4 = live.iter().map(|(_, f)| f.e4).min().expect("nonempty");
        let e6 = live.iter().map(|(_, f)| f.e6).min().expect("nonempty");
        let e_delta = (weight - 4 * e4 - 6 * e6) / 12;
        let mut den = live[0].1.r_den.clone();
        for (_, f) in &live[1..] {
            if f.r_den != den {
                let g = den.gcd(&f.r_den);
                den = den.mul(&f.r_den.div_exact(&g).expect("gcd divides"));
            }
        }
        let mut num = UniPoly::zero();
        for (c, f) in &live {
            debug_assert!((f.e4 - e4) % 3 == 0 && (f.e6 - e6) % 2 == 0);
            let sj = ((f.e4 - e4) / 3) as u32;
            let sk = ((f.e6 - e6) / 2) as u32;
            let cofactor = den.div_exact(&f.r_den).expect("common denominator");
            let term = f
                .r_num
                .mul(&cofactor)
                .mul(&UniPoly::x().pow(sj))
                .mul(&j_minus_1728().pow(sk))
                .scale(&(c * &f.scale));
            num = num.add(&term);
        }
        if num.is_zero() {
            return Ok(MeroModForm::zero(weight));
        }
        Self::from_parts(Rational::one(), e4, e6, e_delta, num, den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Evaluates `sum c_i j^i Delta^(d - i) = sum c_i E4^(3i) Delta^(d - i)`,
    /// a unit power series for monic `r` of degree `d`.
    fn homogenized(r: &UniPoly, precision: i64) -> TruncatedLaurent {
        let d = r.deg();
        let e4_cubed = generator_series(Generator::E4, precision)
            .pow(3)
            .expect("positive power");
        let delta = generator_series(Generator::Delta, precision);
        let mut acc = TruncatedLaurent::zero_to(precision);
        let mut e4_pow = TruncatedLaurent::one();
        let mut delta_pows = vec![TruncatedLaurent::one()];
        for _ in 0..d {
            let last = delta_pows.last().expect("nonempty");
            delta_pows.push(last * &delta);
        }
        for i in 0..=d {
            let c = r.coeff(i);
            if !c.is_zero() {
                acc = &acc + &(&e4_pow * &delta_pows[d - i]).scale(&c);
            }
            e4_pow = &e4_pow * &e4_cubed;
        }
        acc.with_order(precision)
    }

    /// The q-expansion with guaranteed order `order`.
    pub fn expand(&self, order: i64) -> TruncatedLaurent {
        if self.is_zero() {
            return TruncatedLaurent::zero_to(order);
        }
        let v = self.v_infinity();
        let rel = order - v;
        if rel <= 0 {
            return TruncatedLaurent::zero_to(order);
        }
        // f = scale * q^v * E4^e4 * E6^e6 * (Delta/q)^v * A / B with A, B units.
        let e4 = generator_series(Generator::E4, rel);
        let e6 = generator_series(Generator::E6, rel);
        let delta_over_q = generator_series(Generator::Delta, rel + 1).shift(-1);
        let mut acc = TruncatedLaurent::constant(self.scale.clone()).with_order(rel);
        for (s, n) in [(&e4, self.e4), (&e6, self.e6), (&delta_over_q, v)] {
            if n != 0 {
                acc = &acc * &s.pow(n).expect("unit series invert");
            }
        }
        if !self.r_num.is_one() {
            acc = &acc * &Self::homogenized(&self.r_num, rel);
        }
        if !self.r_den.is_one() {
            acc = &acc
                * &Self::homogenized(&self.r_den, rel)
                    .invert()
                    .expect("unit series invert");
        }
        acc.shift(v).with_order(order)
    }

    /// `E4^-2 * Delta * (j-2)/(j^2-5)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut factors: Vec<String> = Vec::new();
        for (name, e) in [("E4", self.e4), ("E6", self.e6), ("Delta", self.e_delta)] {
            match e {
                0 => {}
                1 => factors.push(name.into()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        let num = (!self.r_num.is_one()).then(|| self.r_num.render_compact("j"));
        let den = (!self.r_den.is_one()).then(|| self.r_den.render_compact("j"));
        match (num, den) {
            (Some(n), Some(d)) => factors.push(format!("({n})/({d})")),
            (Some(n), None) => factors.push(format!("({n})")),
            (None, Some(d)) => factors.push(format!("1/({d})")),
            (None, None) => {}
        }
        let abs = self.scale.abs();
        let sign = if self.scale.is_negative() { "-" } else { "" };
        if factors.is_empty() {
            return format!("{sign}{abs}");
        }
        let body = factors.join(" * ");
        if abs.is_one() {
            format!("{sign}{body}")
        } else {
            format!("{sign}{abs} * {body}")
        }
    }
}

impl fmt::Display for MeroModForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn canonical_examples() {
        let j = MeroModForm::e4()
            .pow(3)
            .unwrap()
            .div(&MeroModForm::delta())
            .unwrap();
        assert_eq!(j, MeroModForm::j());
        assert_eq!(j.exponents(), (3, 0, -1));

        let s = MeroModForm::e4()
            .pow(3)
            .unwrap()
            .add(&MeroModForm::e6().pow(2).unwrap())
            .unwrap();
        assert_eq!(s.scale(), &int(2));
        assert_eq!(s.exponents(), (0, 0, 1));
        assert_eq!(s.r_num(), &UniPoly::from_ints(&[-864, 1]));

        let f4a = MeroModForm::delta()
            .div(&MeroModForm::e4().pow(2).unwrap())
            .unwrap();
        assert_eq!(f4a.exponents(), (-2, 0, 1));
        assert!(f4a.r_num().is_one() && f4a.r_den().is_one());
    }

    #[test]
    fn field_examples() {
        let e4c = MeroModForm::e4().pow(3).unwrap();
        let e6s = MeroModForm::e6().pow(2).unwrap();
        assert_eq!(
            e4c.sub(&e6s).unwrap(),
            MeroModForm::monomial(int(1728), 0, 0, 1)
        );
        let f4a = MeroModForm::monomial(int(1), -2, 0, 1);
        assert_eq!(
            f4a.mul(&MeroModForm::e4().pow(2).unwrap()),
            MeroModForm::delta()
        );
        let jm = MeroModForm::j()
            .sub(&MeroModForm::constant(int(1728)))
            .unwrap();
        assert_eq!(jm, MeroModForm::monomial(int(1), 0, 2, -1));
        assert!(matches!(
            MeroModForm::e4().add(&MeroModForm::e6()),
            Err(Error::WeightMismatch { .. })
        ));
        assert_eq!(
            MeroModForm::one().div(&MeroModForm::zero(0)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn expansions() {
        let d = MeroModForm::delta().expand(4);
        assert_eq!(
            d,
            TruncatedLaurent::new(1, vec![int(1), int(-24), int(252)], 4)
        );
        let f4a = MeroModForm::monomial(int(1), -2, 0, 1).expand(3);
        assert_eq!(f4a.valuation(), 1);
        assert_eq!(f4a.coeff(1).unwrap(), int(1));
        assert_eq!(f4a.coeff(2).unwrap(), int(-504));
        let j = MeroModForm::j().expand(1);
        assert_eq!(j, TruncatedLaurent::new(-1, vec![int(1), int(744)], 1));
        assert_eq!(j.to_string(), "q^-1 + 744 + O(q)");
        // (j - 2) / (j^2 - 5) ~ q + ...
        let r = MeroModForm::rational_in_j(
            UniPoly::from_ints(&[-2, 1]),
            UniPoly::from_ints(&[-5, 0, 1]),
        )
        .unwrap();
        let direct = {
            let js = generator_series(Generator::J, 12);
            let num = &js - &TruncatedLaurent::constant(int(2));
            let den = &(&js * &js) - &TruncatedLaurent::constant(int(5));
            &num * &den.invert().unwrap()
        };
        let e = r.expand(8);
        assert!(e.agrees_to(&direct, 8).unwrap());
    }

    #[test]
    fn rendering() {
        let f = MeroModForm::from_parts(
            int(1),
            -2,
            0,
            1,
            UniPoly::from_ints(&[-2, 1]),
            UniPoly::from_ints(&[-5, 0, 1]),
        )
        .unwrap();
        assert_eq!(f.render(), "E4^-2 * Delta * (j-2)/(j^2-5)");
        assert_eq!(MeroModForm::constant(frac(-1, 2)).render(), "-1/2");
        assert_eq!(
            MeroModForm::monomial(int(12), 0, 0, 1).render(),
            "12 * Delta"
        );
    }
}
