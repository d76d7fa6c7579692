use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::form::{qm_delta, qm_delta_pow, QMForm};
use crate::error::{Error, Result};
use crate::linalg;
use crate::modular::{basis_mk_d, dim_m, dim_s, mmf_divisor, Divisor, MeroModForm, PointKey};
use crate::rational::{floor_div, frac, Rational};

/// The image of a quasimodular form in `QM / delta(QM)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientClass {
    pub weight: i64,
    /// Coefficient of `E2^(k-1)`, weight `2 - k`.
    pub m_part: MeroModForm,
    pub tilde_part: MeroModForm,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.m_part.is_zero() && self.tilde_part.is_zero()
    }
}

/// `f = delta(g) + class.m_part * E2^(k-1) + class.tilde_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub g: QMForm,
    pub class: QuotientClass,
    /// Exponent bound through which the expansions of both sides were compared.
    pub verified_order: i64,
}

impl Decomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.render(),
            "m": self.class.m_part.render(),
            "tilde": self.class.tilde_part.render(),
            "verified_order": self.verified_order,
        })
    }
}

/// Peels `E2`-powers off `f`: returns `(g, m, f_mod)` with
/// `f = delta(g) + m E2^(k-1) + f_mod`.
pub fn depth_reduce(f: &QMForm) -> Result<(QMForm, MeroModForm, MeroModForm)> {
    let k = f.weight();
    let mut rest = f.clone();
    let mut g = QMForm::zero(k - 2);
    let mut m = MeroModForm::zero(2 - k);
    while rest.depth() >= 1 {
        let p = rest.depth();
        let top = rest.coeff(p);
        if p as i64 == k - 1 {
            m = top.clone();
            rest = rest.sub(&QMForm::e2_power(top, p))?;
            continue;
        }
        let c = frac(12, k - p as i64 - 1);
        let step = QMForm::e2_power(top, p - 1).scale(&c);
        rest = rest.sub(&qm_delta(&step)?)?;
        g = g.add(&step)?;
    }
    Ok((g, m, rest.modular_part()))
}

/// `delta^(k-1)(g)` for `g` of weight `2 - k`; the result is modular.
pub fn delta_power_bol(g: &MeroModForm, k: i64) -> Result<MeroModForm> {
    if k < 2 || g.weight() != 2 - k {
        return Err(Error::WeightMismatch {
            expected: 2 - k,
            found: g.weight(),
        });
    }
    let image = qm_delta_pow(&QMForm::from_modular(g.clone()), (k - 1) as usize)?;
    if let Some(power) = (1..image.coeffs().len()).find(|&r| !image.coeff(r).is_zero()) {
        return Err(Error::BolViolation { power });
    }
    Ok(image.modular_part())
}

fn check_even_weight(k: i64) -> Result<()> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight must be even and at least 2, got {k}"
        )));
    }
    Ok(())
}

/// Whether `f` lies in the space bounded by `v_inf >= -dim S_k` and `v_P >= 1 - k` elsewhere.
pub fn tilde_membership(f: &MeroModForm, k: i64) -> Result<bool> {
    check_even_weight(k)?;
    if f.weight() != k {
        return Err(Error::WeightMismatch {
            expected: k,
            found: f.weight(),
        });
    }
    if f.is_zero() {
        return Ok(true);
    }
    let d = mmf_divisor(f, &[])?;
    let points_ok = d.entries().all(|(p, n)| match p {
        PointKey::Infinity => n >= -dim_s(k),
        _ => n >= 1 - k,
    });
    let residual_ok = d.residual().iter().all(|r| r.multiplicity >= 1 - k);
    Ok(points_ok && residual_ok)
}

/// `D_S = dim S_k (inf) + sum_{P in S'} (k - 1)/h_P (P)`, as integer orders.
pub fn tilde_divisor(k: i64, support: &[PointKey]) -> Divisor {
    let mut d = Divisor::new();
    d.add_at(PointKey::Infinity, dim_s(k));
    for p in normalized_support(support) {
        if p != PointKey::Infinity {
            d.add_at(p, k - 1);
        }
    }
    d
}

fn w_p(p: &PointKey, k: i64) -> i64 {
    match p {
        PointKey::I => 2 * floor_div(k - 2, 4) + 1,
        PointKey::Rho => 2 * floor_div(k - 2, 6) + 1,
        _ => k - 1,
    }
}

fn normalized_support(support: &[PointKey]) -> Vec<PointKey> {
    let mut out: Vec<PointKey> = support
        .iter()
        .map(|p| match p {
            PointKey::RationalJ(c) => PointKey::from_j(c.clone()),
            other => other.clone(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `(formula value, basis count)` for the complement restricted to poles in `S`.
pub fn dim_tilde_m(k: i64, support: &[PointKey]) -> Result<(i64, i64)> {
    check_even_weight(k)?;
    let support = normalized_support(support);
    if !support.contains(&PointKey::Infinity) {
        return Err(Error::InvalidArgument("support must contain inf".into()));
    }
    let formula = dim_m(k)
        + dim_s(k)
        + support
            .iter()
            .filter(|p| **p != PointKey::Infinity)
            .map(|p| w_p(p, k))
            .sum::<i64>();
    let basis = basis_mk_d(k, &tilde_divisor(k, &support))?.len() as i64;
    Ok((formula, basis))
}

/// Pole orders of `f` at rational points (`n_P = -v_P > 0`).
fn pole_orders(f: &MeroModForm) -> Result<BTreeMap<PointKey, i64>> {
    if f.is_zero() {
        return Ok(BTreeMap::new());
    }
    let d = mmf_divisor(f, &[])?;
    if d.residual().iter().any(|r| r.multiplicity < 0) {
        return Err(Error::UnsupportedPoint(
            "pole at an irrational value of j".into(),
        ));
    }
    Ok(d.entries()
        .filter(|(_, n)| *n < 0)
        .map(|(p, n)| (p.clone(), -n))
        .collect())
}

/// The support `{inf}` together with every pole of `f`.
pub fn pole_support(f: &MeroModForm) -> Result<Vec<PointKey>> {
    let mut s: Vec<PointKey> = pole_orders(f)?.into_keys().collect();
    s.push(PointKey::Infinity);
    Ok(normalized_support(&s))
}

fn max_divisor(parts: &[&BTreeMap<PointKey, i64>]) -> BTreeMap<PointKey, i64> {
    let mut out: BTreeMap<PointKey, i64> = BTreeMap::new();
    for part in parts {
        for (p, &n) in part.iter() {
            let e = out.entry(p.clone()).or_insert(0);
            *e = (*e).max(n);
        }
    }
    out
}

fn as_divisor(d: &BTreeMap<PointKey, i64>) -> Divisor {
    Divisor::from_entries(d.iter().map(|(p, &n)| (p.clone(), n)))
}

/// Exclusive exponent bound past which a form of weight `k` with poles bounded
/// by `d` is determined: `floor(k/12 + deg D) + 1 - n_inf`, plus a margin of 2.
pub fn determination_bound(k: i64, d: &BTreeMap<PointKey, i64>) -> i64 {
    let deg = as_divisor(d).degree() + frac(k, 12);
    let n_inf = d.get(&PointKey::Infinity).copied().unwrap_or(0);
    deg.floor().to_integer().try_into().unwrap_or(i64::MAX / 4) + 1 - n_inf + 2
}

/// Coefficients of `s` at exponents `low..high`.
fn coords(s: &crate::series::TruncatedLaurent, low: i64, high: i64) -> Result<Vec<Rational>> {
    (low..high).map(|e| s.coeff(e)).collect()
}

fn combine(basis: &[MeroModForm], xs: &[Rational], weight: i64) -> Result<MeroModForm> {
    MeroModForm::linear_combination(weight, xs.iter().cloned().zip(basis))
}

/// Splits `f` of weight `k` as `delta^(k-1)(g) + f_tilde` with `f_tilde` in the
/// complement, by exact linear algebra on q-expansions followed by an exact check.
pub fn bol_split(
    f: &MeroModForm,
    k: i64,
    support: &[PointKey],
) -> Result<(MeroModForm, MeroModForm, i64)> {
    check_even_weight(k)?;
    if f.weight() != k {
        return Err(Error::WeightMismatch {
            expected: k,
            found: f.weight(),
        });
    }
    if f.is_zero() {
        return Ok((MeroModForm::zero(2 - k), MeroModForm::zero(k), 0));
    }
    let support = normalized_support(support);
    if !support.contains(&PointKey::Infinity) {
        return Err(Error::InvalidArgument("support must contain inf".into()));
    }
    let poles = pole_orders(f)?;
    if let Some(p) = poles.keys().find(|p| !support.contains(p)) {
        return Err(Error::UnsupportedPoint(format!(
            "pole at {p} outside the support"
        )));
    }

    // Pole bounds for g: finite poles beyond k - 1 are matched by poles of
    // order n - (k - 1); the cusp also absorbs the cusp poles introduced by
    // the constructions that remove them.
    let mut g_poles: BTreeMap<PointKey, i64> = BTreeMap::new();
    for (p, &n) in &poles {
        if *p != PointKey::Infinity && n > k - 1 {
            g_poles.insert(p.clone(), n - (k - 1));
        }
    }
    let cusp_extra = if g_poles.is_empty() {
        0
    } else {
        (frac(k - 2, 12) + frac(5, 6))
            .ceil()
            .to_integer()
            .try_into()
            .unwrap_or(0)
    };
    let n_inf = poles
        .get(&PointKey::Infinity)
        .copied()
        .unwrap_or(0)
        .max(cusp_extra);
    if n_inf > 0 {
        g_poles.insert(PointKey::Infinity, n_inf);
    }
    let g_basis = basis_mk_d(2 - k, &as_divisor(&g_poles))?;

    let tilde_div = tilde_divisor(k, &support);
    let tilde_poles: BTreeMap<PointKey, i64> = tilde_div
        .entries()
        .filter(|(_, n)| *n > 0)
        .map(|(p, n)| (p.clone(), n))
        .collect();
    let tilde_basis = basis_mk_d(k, &tilde_div)?;

    let image_poles: BTreeMap<PointKey, i64> = g_poles
        .iter()
        .map(|(p, &n)| match p {
            PointKey::Infinity => (p.clone(), n),
            _ => (p.clone(), n + k - 1),
        })
        .collect();
    let total = max_divisor(&[&poles, &tilde_poles, &image_poles]);
    let low = -total.get(&PointKey::Infinity).copied().unwrap_or(0);
    let high = determination_bound(k, &total);

    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for b in &g_basis {
        let s = b.expand(high).delta_pow((k - 1) as u32);
        columns.push(coords(&s, low, high)?);
    }
    for b in &tilde_basis {
        columns.push(coords(&b.expand(high), low, high)?);
    }
    let rhs_series = f.expand(high);
    let mut rows: Vec<Vec<Rational>> = (0..(high - low) as usize)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut rhs = coords(&rhs_series, low, high)?;
    if k == 2 {
        // delta kills constants: pin the constant term of g to zero.
        let mut row = Vec::with_capacity(columns.len());
        for b in &g_basis {
            row.push(b.expand(1).coeff(0)?);
        }
        row.extend(std::iter::repeat_n(Rational::zero(), tilde_basis.len()));
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let x = if columns.is_empty() {
        if rhs.iter().all(|r| r.is_zero()) {
            Vec::new()
        } else {
            return Err(Error::SystemInconsistent("no unknowns".into()));
        }
    } else {
        linalg::solve(&rows, &rhs)
            .map_err(|_| Error::SystemInconsistent(format!("weight {k}, form {f}")))?
    };
    let (xg, xt) = x.split_at(g_basis.len());
    let g = combine(&g_basis, xg, 2 - k)?;
    let tilde = combine(&tilde_basis, xt, k)?;

    let rebuilt = delta_power_bol(&g, k)?.add(&tilde)?;
    if rebuilt != *f {
        return Err(Error::SystemInconsistent(format!(
            "exact check failed for {f}"
        )));
    }
    Ok((g, tilde, high))
}

/// The decomposition `f = delta(g) + m E2^(k-1) + f_tilde`. Poles are taken
/// from `support`, or from the poles of the depth-0 remainder when `None`.
pub fn decompose_complement(f: &QMForm, support: Option<&[PointKey]>) -> Result<Decomposition> {
    let k = f.weight();
    let (g1, m, f_mod) = depth_reduce(f)?;
    let (g, tilde, verified) = if k >= 2 && k % 2 == 0 {
        let s = match support {
            Some(s) => s.to_vec(),
            None => pole_support(&f_mod)?,
        };
        let (g2, tilde, bound) = bol_split(&f_mod, k, &s)?;
        let lifted = qm_delta_pow(&QMForm::from_modular(g2), (k - 2) as usize)?;
        (g1.add(&lifted)?, tilde, bound)
    } else {
        (g1, f_mod, 0)
    };
    let class = QuotientClass {
        weight: k,
        m_part: m,
        tilde_part: tilde,
    };
    let decomposition = Decomposition {
        g,
        class,
        verified_order: verified.max(1),
    };
    let rebuilt = reassemble(&decomposition)?;
    if rebuilt != *f {
        return Err(Error::SystemInconsistent(format!(
            "decomposition of {f} does not reassemble"
        )));
    }
    let order = decomposition.verified_order;
    if !f.expand(order).agrees_to(&rebuilt.expand(order), order)? {
        return Err(Error::SystemInconsistent(format!(
            "expansions of {f} disagree below q^{order}"
        )));
    }
    Ok(decomposition)
}

/// `delta(g) + m E2^(k-1) + f_tilde`.
pub fn reassemble(d: &Decomposition) -> Result<QMForm> {
    let k = d.class.weight;
    let mut out = qm_delta(&d.g)?;
    if !d.class.m_part.is_zero() {
        out = out.add(&QMForm::e2_power(d.class.m_part.clone(), (k - 1) as usize))?;
    }
    out.add(&QMForm::from_modular(d.class.tilde_part.clone()))
}

/// The class of `f` in `QM / delta(QM)`.
pub fn quotient_class(f: &QMForm) -> Result<QuotientClass> {
    Ok(decompose_complement(f, None)?.class)
}
