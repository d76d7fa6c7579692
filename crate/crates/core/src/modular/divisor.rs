//! Points of the modular curve with rational j-invariant, divisors, the
//! valence formula, dimension formulas and bases of `M_k(D)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::form::MeroModForm;
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, parse, to_json_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKey {
    Infinity,
    I,
    Rho,
    RationalJ(Rational),
}

impl PointKey {
    /// The point with `j(P) = c`; `j = 0` is `Rho` and `j = 1728` is `I`.
    pub fn from_j(c: Rational) -> Self {
        if c.is_zero() {
            PointKey::Rho
        } else if c == int(1728) {
            PointKey::I
        } else {
            PointKey::RationalJ(c)
        }
    }

    /// Ramification index `h_P`.
    pub fn h(&self) -> i64 {
        match self {
            PointKey::I => 2,
            PointKey::Rho => 3,
            _ => 1,
        }
    }

    pub fn j_value(&self) -> Option<Rational> {
        match self {
            PointKey::Infinity => None,
            PointKey::I => Some(int(1728)),
            PointKey::Rho => Some(Rational::zero()),
            PointKey::RationalJ(c) => Some(c.clone()),
        }
    }

    /// Accepts `inf`, `i`, `rho`, `j=c` or a bare rational `c`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "oo" => Ok(PointKey::Infinity),
            "i" => Ok(PointKey::I),
            "rho" => Ok(PointKey::Rho),
            _ => {
                let v = s.strip_prefix("j=").unwrap_or(s);
                parse(v)
                    .map(PointKey::from_j)
                    .ok_or_else(|| Error::UnsupportedPoint(s.to_string()))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PointKey::Infinity => json!("inf"),
            PointKey::I => json!("i"),
            PointKey::Rho => json!("rho"),
            PointKey::RationalJ(c) => json!({ "j": to_json_string(c) }),
        }
    }
}

impl fmt::Display for PointKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKey::Infinity => f.write_str("inf"),
            PointKey::I => f.write_str("i"),
            PointKey::Rho => f.write_str("rho"),
            PointKey::RationalJ(c) => write!(f, "j={c}"),
        }
    }
}

/// Points whose `j`-value is a root of an irreducible-over-`Q` part without
/// rational roots: a square-free factor and the common order there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualFactor {
    pub factor: UniPoly,
    pub multiplicity: i64,
}

/// `sum v_P / h_P (P)`, storing the integers `v_P`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    entries: BTreeMap<PointKey, i64>,
    residual: Vec<ResidualFactor>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (PointKey, i64)>) -> Self {
        let mut d = Divisor::new();
        for (p, n) in entries {
            d.add_at(p, n);
        }
        d
    }

    pub fn add_at(&mut self, p: PointKey, n: i64) {
        let e = self.entries.entry(p).or_insert(0);
        *e += n;
    }

    /// `v_P` (zero off the support).
    pub fn get(&self, p: &PointKey) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PointKey, i64)> {
        self.entries.iter().map(|(p, &n)| (p, n))
    }

    pub fn residual(&self) -> &[ResidualFactor] {
        &self.residual
    }

    pub fn degree(&self) -> Rational {
        let points: Rational = self
            .entries
            .iter()
            .map(|(p, &n)| Rational::new(n.into(), p.h().into()))
            .sum();
        let rest: i64 = self
            .residual
            .iter()
            .map(|r| r.factor.deg() as i64 * r.multiplicity)
            .sum();
        points + int(rest)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, n) in other.entries() {
            out.add_at(p.clone(), n);
        }
        for r in &other.residual {
            match out.residual.iter_mut().find(|s| s.factor == r.factor) {
                Some(s) => s.multiplicity += r.multiplicity,
                None => out.residual.push(r.clone()),
            }
        }
        out.entries.retain(|_, n| *n != 0);
        out.residual.retain(|r| r.multiplicity != 0);
        out
    }

    /// The same divisor without zero entries, for comparisons.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.entries.retain(|_, n| *n != 0);
        out.residual.retain(|r| r.multiplicity != 0);
        out.residual.sort_by(|a, b| a.factor.cmp(&b.factor));
        out
    }

    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .entries
            .iter()
            .map(|(p, n)| json!({ "point": p.to_json(), "v": n }))
            .collect();
        let residual: Vec<Value> = self
            .residual
            .iter()
            .map(|r| {
                json!({
                    "factor": r.factor.render_compact("j"),
                    "degree": r.factor.deg(),
                    "v": r.multiplicity,
                })
            })
            .collect();
        json!({ "points": points, "residual": residual })
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .filter(|(_, &n)| n != 0)
            .map(|(p, &n)| {
                let c = Rational::new(n.into(), p.h().into());
                format!("{c}*({p})")
            })
            .collect();
        for r in &self.residual {
            parts.push(format!(
                "{}*(roots of {})",
                r.multiplicity,
                r.factor.render_compact("j")
            ));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Yun's square-free decomposition of a monic polynomial: `(factor, multiplicity)`.
fn square_free(f: &UniPoly) -> Vec<(UniPoly, i64)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).expect("gcd divides");
    let mut d = df.div_exact(&b).expect("gcd divides").sub(&c.derivative());
    let mut i = 1;
    while c.deg() > 0 {
        let a = c.gcd(&d);
        c = c.div_exact(&a).expect("gcd divides");
        d = d.div_exact(&a).expect("gcd divides").sub(&c.derivative());
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn add_polynomial_support(d: &mut Divisor, r: &UniPoly, sign: i64) {
    let (roots, rest) = r.rational_roots();
    for (c, m) in roots {
        d.add_at(PointKey::from_j(c), sign * m as i64);
    }
    for (factor, m) in square_free(&rest) {
        d.residual.push(ResidualFactor {
            factor,
            multiplicity: sign * m,
        });
    }
}

/// `div(f)`. `extra_points` are listed even where the order is zero.
pub fn mmf_divisor(f: &MeroModForm, extra_points: &[PointKey]) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (e4, e6, _) = f.exponents();
    let mut d = Divisor::new();
    d.add_at(PointKey::Infinity, f.v_infinity());
    d.add_at(PointKey::Rho, e4);
    d.add_at(PointKey::I, e6);
    add_polynomial_support(&mut d, f.r_num(), 1);
    add_polynomial_support(&mut d, f.r_den(), -1);
    d.entries.retain(|_, n| *n != 0);
    for p in extra_points {
        d.entries.entry(p.clone()).or_insert(0);
    }
    d.residual.sort_by(|a, b| a.factor.cmp(&b.factor));
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValenceReport {
    pub degree: Rational,
    pub expected: Rational,
    pub divisor: Divisor,
}

/// Checks `deg div(f) = k / 12`.
pub fn valence_check(f: &MeroModForm) -> Result<ValenceReport> {
    let divisor = mmf_divisor(f, &[])?;
    let degree = divisor.degree();
    let expected = Rational::new(f.weight().into(), 12.into());
    if degree != expected {
        return Err(Error::ValenceViolation {
            degree: degree.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(ValenceReport {
        degree,
        expected,
        divisor,
    })
}

pub fn dim_m(k: i64) -> i64 {
    if k < 0 || k % 2 != 0 {
        0
    } else if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

pub fn dim_s(k: i64) -> i64 {
    if k >= 4 {
        (dim_m(k) - 1).max(0)
    } else {
        0
    }
}

/// Exponent pairs `(a, b)` with `4a + 6b = k`, by increasing `b`.
pub fn holomorphic_monomials(k: i64) -> Vec<(i64, i64)> {
    if k < 0 {
        return Vec::new();
    }
    (0..=k / 6)
        .filter(|b| (k - 6 * b) % 4 == 0)
        .map(|b| ((k - 6 * b) / 4, b))
        .collect()
}

/// The form with divisor `(1/h_P)(P)`: `E4`, `E6`, `Delta` or `(j - j(P)) Delta`.
pub fn u_p(p: &PointKey) -> Result<MeroModForm> {
    let p = match p {
        PointKey::RationalJ(c) => PointKey::from_j(c.clone()),
        other => other.clone(),
    };
    Ok(match p {
        PointKey::Rho => MeroModForm::e4(),
        PointKey::I => MeroModForm::e6(),
        PointKey::Infinity => MeroModForm::delta(),
        PointKey::RationalJ(c) => MeroModForm::from_parts(
            Rational::one(),
            0,
            0,
            1,
            UniPoly::linear_root(&c),
            UniPoly::one(),
        )?,
    })
}

/// `g_D = prod u_P^(n_P)`, with `div(g_D) = D`.
pub fn g_d(d: &Divisor) -> Result<MeroModForm> {
    if !d.residual.is_empty() {
        return Err(Error::UnsupportedPoint(
            "divisor has support at irrational j".into(),
        ));
    }
    let mut g = MeroModForm::one();
    for (p, n) in d.entries() {
        g = g.mul(&u_p(p)?.pow(n)?);
    }
    Ok(g)
}

/// `g_D^-1 * {E4^a E6^b : 4a + 6b = k + 12 deg D}`, a basis of
/// `M_k(D) = {f : v_P(f) >= -n_P}`.
pub fn basis_mk_d(k: i64, d: &Divisor) -> Result<Vec<MeroModForm>> {
    let g = g_d(d)?;
    let inv = g.inv()?;
    Ok(holomorphic_monomials(k + g.weight())
        .into_iter()
        .map(|(a, b)| MeroModForm::monomial(int(1), a, b, 0).mul(&inv))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn divisors_of_examples() {
        let d = mmf_divisor(&MeroModForm::e4(), &[]).unwrap();
        assert_eq!(d, Divisor::from_entries([(PointKey::Rho, 1)]));
        assert_eq!(d.degree(), frac(1, 3));
        let f4a = MeroModForm::monomial(int(1), -2, 0, 1);
        let d = mmf_divisor(&f4a, &[]).unwrap();
        assert_eq!(
            d,
            Divisor::from_entries([(PointKey::Rho, -2), (PointKey::Infinity, 1)])
        );
        assert_eq!(d.degree(), frac(1, 3));
        let d = mmf_divisor(&MeroModForm::delta(), &[]).unwrap();
        assert_eq!(d, Divisor::from_entries([(PointKey::Infinity, 1)]));
        assert_eq!(
            mmf_divisor(&MeroModForm::zero(4), &[]),
            Err(Error::ZeroForm)
        );
    }

    #[test]
    fn residual_support() {
        // (j - 2)^2 / (j^2 - 5)^3 * Delta^4: valence still holds.
        let f = MeroModForm::from_parts(
            int(1),
            0,
            0,
            4,
            UniPoly::from_ints(&[-2, 1]).pow(2),
            UniPoly::from_ints(&[-5, 0, 1]).pow(3),
        )
        .unwrap();
        let d = mmf_divisor(&f, &[]).unwrap();
        assert_eq!(d.get(&PointKey::RationalJ(int(2))), 2);
        assert_eq!(d.residual().len(), 1);
        assert_eq!(d.residual()[0].multiplicity, -3);
        assert_eq!(d.get(&PointKey::Infinity), 4 - 2 + 6);
        assert!(valence_check(&f).is_ok());
    }

    #[test]
    fn valence_examples() {
        let r = valence_check(&MeroModForm::e6()).unwrap();
        assert_eq!(r.degree, frac(1, 2));
        let f6 = MeroModForm::monomial(int(1), -3, 1, 1);
        assert_eq!(valence_check(&f6).unwrap().degree, frac(1, 2));
        assert_eq!(valence_check(&MeroModForm::one()).unwrap().degree, int(0));
    }

    #[test]
    fn dimensions() {
        assert_eq!((dim_m(12), dim_s(12)), (2, 1));
        assert_eq!(dim_m(0), 1);
        assert_eq!(dim_m(2), 0);
        assert_eq!(dim_m(-4), 0);
        assert_eq!(dim_m(7), 0);
        for k in (0..=48).step_by(2) {
            assert_eq!(dim_m(k), holomorphic_monomials(k).len() as i64);
        }
    }

    #[test]
    fn u_p_examples() {
        assert_eq!(u_p(&PointKey::Infinity).unwrap(), MeroModForm::delta());
        assert_eq!(u_p(&PointKey::I).unwrap(), MeroModForm::e6());
        let u = u_p(&PointKey::RationalJ(int(2))).unwrap();
        assert_eq!(u.exponents(), (0, 0, 1));
        assert_eq!(u.r_num(), &UniPoly::from_ints(&[-2, 1]));
        for p in [
            PointKey::Infinity,
            PointKey::I,
            PointKey::Rho,
            PointKey::RationalJ(int(2)),
        ] {
            let d = mmf_divisor(&u_p(&p).unwrap(), &[]).unwrap();
            assert_eq!(d, Divisor::from_entries([(p, 1)]));
        }
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis_mk_d(12, &Divisor::new()).unwrap().len(), 2);
        let inf = Divisor::from_entries([(PointKey::Infinity, 1)]);
        assert_eq!(basis_mk_d(0, &inf).unwrap().len(), 2);
        let rho = Divisor::from_entries([(PointKey::Rho, 2)]);
        assert_eq!(g_d(&rho).unwrap(), MeroModForm::e4().pow(2).unwrap());
        assert_eq!(basis_mk_d(4, &rho).unwrap().len(), 2);
    }

    #[test]
    fn point_parsing() {
        assert_eq!(PointKey::parse("inf").unwrap(), PointKey::Infinity);
        assert_eq!(PointKey::parse("j=0").unwrap(), PointKey::Rho);
        assert_eq!(PointKey::parse("1728").unwrap(), PointKey::I);
        assert_eq!(PointKey::parse("j=2").unwrap(), PointKey::RationalJ(int(2)));
        assert!(PointKey::parse("banana").is_err());
    }
}
