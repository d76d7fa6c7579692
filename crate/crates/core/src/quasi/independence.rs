use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::decompose::{determination_bound, quotient_class, QuotientClass};
use super::form::QMForm;
use crate::error::{Error, Result};
use crate::linalg;
use crate::modular::{mmf_divisor, MeroModForm, PointKey};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBlock {
    pub weight: i64,
    pub members: Vec<usize>,
    pub rank: usize,
    pub verified_order: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub classes: Vec<QuotientClass>,
    pub blocks: Vec<WeightBlock>,
    pub rank: usize,
    pub count: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.rank == self.count
    }

    pub fn verdict(&self) -> &'static str {
        if self.independent() {
            "independent: the classes are linearly independent modulo derivatives, \
             so the iterated primitives are algebraically independent over K"
        } else {
            "dependent: the classes are linearly dependent modulo derivatives"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "count": self.count,
            "independent": self.independent(),
            "classes": self.classes.iter().map(|c| json!({
                "weight": c.weight,
                "m": c.m_part.render(),
                "tilde": c.tilde_part.render(),
            })).collect::<Vec<_>>(),
            "blocks": self.blocks.iter().map(|b| json!({
                "weight": b.weight,
                "members": b.members,
                "rank": b.rank,
                "verified_order": b.verified_order,
            })).collect::<Vec<_>>(),
            "verdict": self.verdict(),
        })
    }
}

/// Pointwise maximum of pole orders over `forms`, at rational points.
fn common_poles(forms: &[&MeroModForm]) -> Result<BTreeMap<PointKey, i64>> {
    let mut out: BTreeMap<PointKey, i64> = BTreeMap::new();
    for f in forms.iter().filter(|f| !f.is_zero()) {
        let d = mmf_divisor(f, &[])?;
        if d.residual().iter().any(|r| r.multiplicity < 0) {
            return Err(Error::UnsupportedPoint(
                "pole at an irrational value of j".into(),
            ));
        }
        for (p, n) in d.entries().filter(|(_, n)| *n < 0) {
            let e = out.entry(p.clone()).or_insert(0);
            *e = (*e).max(-n);
        }
    }
    Ok(out)
}

/// Expansion coordinates that determine forms of a common weight with the given poles.
fn coordinates(forms: &[&MeroModForm]) -> Result<(Vec<Vec<Rational>>, i64)> {
    let Some(first) = forms.first() else {
        return Ok((Vec::new(), 0));
    };
    let poles = common_poles(forms)?;
    let low = -poles.get(&PointKey::Infinity).copied().unwrap_or(0);
    let high = determination_bound(first.weight(), &poles).max(low + 1);
    let rows = forms
        .iter()
        .map(|f| {
            let s = f.expand(high);
            (low..high).map(|e| s.coeff(e)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, high))
}

/// Rank of the classes of `fs` in `QM / delta(QM)`, computed per weight.
pub fn independence_check(fs: &[QMForm]) -> Result<IndependenceReport> {
    let classes = fs.iter().map(quotient_class).collect::<Result<Vec<_>>>()?;
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_weight.entry(c.weight).or_default().push(i);
    }
    let mut blocks = Vec::new();
    for (weight, members) in by_weight {
        let ms: Vec<&MeroModForm> = members.iter().map(|&i| &classes[i].m_part).collect();
        let ts: Vec<&MeroModForm> = members.iter().map(|&i| &classes[i].tilde_part).collect();
        let (m_rows, m_order) = coordinates(&ms)?;
        let (t_rows, t_order) = coordinates(&ts)?;
        let rows: Vec<Vec<Rational>> = m_rows
            .into_iter()
            .zip(t_rows)
            .map(|(mut a, b)| {
                a.extend(b);
                a
            })
            .collect();
        blocks.push(WeightBlock {
            weight,
            rank: linalg::rank(&rows),
            members,
            verified_order: m_order.max(t_order),
        });
    }
    let rank = blocks.iter().map(|b| b.rank).sum();
    Ok(IndependenceReport {
        count: fs.len(),
        classes,
        blocks,
        rank,
    })
}
