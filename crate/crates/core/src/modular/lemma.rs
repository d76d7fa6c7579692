//! Weight `2 - k` forms with a prescribed pole at one point and no other
//! poles away from the cusp.

use super::divisor::{dim_s, u_p, PointKey};
use super::form::MeroModForm;
use crate::error::{Error, Result};
use crate::rational::int;

fn check_weight(k: i64) -> Result<()> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "k must be even and at least 2, got {k}"
        )));
    }
    Ok(())
}

/// `g` of weight `2 - k` with `v_P(g) = vp + k - 1` and `v_Q(g) >= 0` for
/// `Q` outside `{P, inf}`. Free exponents are reduced (`a <= 2`, `b <= 1`),
/// which makes the solution unique; the cusp absorbs the rest.
pub fn lemma_construction_i(k: i64, p: &PointKey, vp: i64) -> Result<MeroModForm> {
    check_weight(k)?;
    if vp > -k {
        return Err(Error::InvalidArgument(format!(
            "need v_P <= -k, got v_P = {vp} for k = {k}"
        )));
    }
    let m = vp + k - 1;
    let p = match p {
        PointKey::RationalJ(c) => PointKey::from_j(c.clone()),
        other => other.clone(),
    };
    let (n_inf, a, b, head) = match &p {
        PointKey::Infinity => {
            return Err(Error::UnsupportedPoint(
                "the cusp is handled by the second construction".into(),
            ))
        }
        PointKey::RationalJ(_) => {
            let rhs = 2 - k - 12 * m;
            let (a, b) = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
                .into_iter()
                .find(|(a, b)| (rhs - 4 * a - 6 * b).rem_euclid(12) == 0)
                .ok_or_else(|| Error::NoSolution(format!("12n + 4a + 6b = {rhs}")))?;
            ((rhs - 4 * a - 6 * b) / 12, a, b, u_p(&p)?.pow(m)?)
        }
        PointKey::I => {
            let rhs = 2 - k - 6 * m;
            let a = (0..3)
                .find(|a| (rhs - 4 * a).rem_euclid(12) == 0)
                .ok_or_else(|| {
                    Error::NoSolution(format!(
                        "12n + 4a = {rhs}: v_i = {vp} is impossible in weight {k}"
                    ))
                })?;
            ((rhs - 4 * a) / 12, a, 0, MeroModForm::e6().pow(m)?)
        }
        PointKey::Rho => {
            let rhs = 2 - k - 4 * m;
            let b = (0..2)
                .find(|b| (rhs - 6 * b).rem_euclid(12) == 0)
                .ok_or_else(|| {
                    Error::NoSolution(format!(
                        "12n + 6b = {rhs}: v_rho = {vp} is impossible in weight {k}"
                    ))
                })?;
            ((rhs - 6 * b) / 12, 0, b, MeroModForm::e4().pow(m)?)
        }
    };
    Ok(head.mul(&MeroModForm::monomial(int(1), a, b, n_inf)))
}

/// `g = Delta^vinf E4^a E6^b` of weight `2 - k`, choosing the largest `b`
/// and then the largest `a`.
pub fn lemma_construction_ii(k: i64, v_inf: i64) -> Result<MeroModForm> {
    check_weight(k)?;
    if v_inf > -dim_s(k) - 1 {
        return Err(Error::InvalidArgument(format!(
            "need v_inf <= {}, got {v_inf}",
            -dim_s(k) - 1
        )));
    }
    let rhs = 2 - k - 12 * v_inf;
    let b = (0..=rhs / 6)
        .rev()
        .find(|b| (rhs - 6 * b) % 4 == 0)
        .ok_or_else(|| Error::NoSolution(format!("4a + 6b = {rhs}")))?;
    let a = (rhs - 6 * b) / 4;
    Ok(MeroModForm::monomial(int(1), a, b, v_inf))
}
