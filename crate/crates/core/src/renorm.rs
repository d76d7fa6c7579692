//! Iterated primitives of Laurent series: plain primitives for power series,
//! the perturbed primitives `I_eps`, their Birkhoff split into `I_+` and
//! `I_-`, and the renormalized iterated primitive `I`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;
use crate::series::{AElement, AEpsElement, EXACT_ORDER};
use crate::shuffle::interleavings;

/// `I(f) = F - a_00` for the canonical primitive `F` of `f`.
pub fn primitive_i(f: &AElement) -> Result<AElement> {
    let big_f = f.antiderivative();
    let c = big_f.ev0()?;
    Ok(big_f.sub(&AElement::constant(c)))
}

/// The recursion `I(f_1 * I(f_2, ..., f_n))` for integrands holomorphic at `q = 0`.
pub fn iter_primitive_holo(fs: &[AElement]) -> Result<AElement> {
    for (index, f) in fs.iter().enumerate() {
        let valuation = f.valuation();
        if valuation < 0 {
            return Err(Error::NotHolomorphic { index, valuation });
        }
    }
    let mut acc = AElement::one();
    for f in fs.iter().rev() {
        acc = primitive_i(&f.mul(&acc))?;
    }
    Ok(acc)
}

fn exact_engine(fs: &[AElement]) -> (Engine, Vec<usize>) {
    (
        Engine::with_eps_caps(fs.to_vec(), None),
        (0..fs.len()).collect(),
    )
}

pub fn iter_eps(fs: &[AElement]) -> AEpsElement {
    let (mut e, w) = exact_engine(fs);
    e.i_eps(&w)
}

/// `(I_+, I_-)`; the empty list maps to `(1, 1)`.
pub fn birkhoff(fs: &[AElement]) -> (AEpsElement, AEpsElement) {
    let mut e = Engine::new(fs.to_vec(), fs.len());
    let w: Vec<usize> = (0..fs.len()).collect();
    e.birkhoff(&w)
}

/// The renormalized iterated primitive `I(f_1, ..., f_n)`.
pub fn iter_primitive(fs: &[AElement]) -> Result<AElement> {
    let mut e = Engine::new(fs.to_vec(), fs.len());
    let w: Vec<usize> = (0..fs.len()).collect();
    e.iter_primitive(&w)
}

/// The input q-order needed to obtain `I(fs)` to q-order `target`:
/// `target + |V| + n` with `V` the sum of the negative valuations.
pub fn required_input_order(fs: &[AElement], target: i64) -> i64 {
    let v: i64 = fs.iter().map(|f| f.valuation().min(0)).sum();
    target + v.abs() + fs.len() as i64
}

/// [`iter_primitive`] with the input-precision bound enforced up front and
/// the output cut to `target`.
pub fn iter_primitive_to(fs: &[AElement], target: i64) -> Result<AElement> {
    let needed = required_input_order(fs, target);
    if let Some(available) = fs.iter().map(AElement::order).min() {
        if available < needed {
            return Err(Error::InsufficientPrecision { needed, available });
        }
    }
    let out = iter_primitive(fs)?;
    if out.order() < target {
        return Err(Error::InsufficientPrecision {
            needed: target,
            available: out.order(),
        });
    }
    Ok(out.with_order(target))
}

/// `I^r(f) = I(1, ..., 1, f)` with `r - 1` leading ones.
pub fn r_fold_primitive(f: &AElement, r: usize) -> Result<AElement> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if !f.is_t_free() {
        return Err(Error::InvalidArgument(
            "r-fold primitives take t-free integrands".into(),
        ));
    }
    let mut fs = vec![AElement::one(); r - 1];
    fs.push(f.clone());
    iter_primitive(&fs)
}

/// Constants in the integration-by-parts identities for `fs` with
/// `fs[slot - 1] = delta(g)` (`slot` counts from 1).
///
/// The residual of the identity without constants is matched against
/// `I(f_1, ..., f_j)` for `j = 0, ..., slot - 1`; entry `j` of the result
/// multiplies `I(f_1, ..., f_j)`. For `n = 1` the identity `I(delta g) = g - g_00`
/// is checked and the list is empty.
pub fn ibp_constants(fs: &[AElement], slot: usize, g: &AElement) -> Result<Vec<Rational>> {
    let n = fs.len();
    if slot == 0 || slot > n {
        return Err(Error::InvalidArgument(format!(
            "slot {slot} out of range 1..={n}"
        )));
    }
    let dg = g.delta();
    let common = dg.order().min(fs[slot - 1].order());
    if !dg.agrees_to(&fs[slot - 1], common)? {
        return Err(Error::InvalidArgument(format!(
            "item {slot} is not delta(g)"
        )));
    }
    let mut fs = fs.to_vec();
    fs[slot - 1] = dg;
    let i = slot - 1;

    if n == 1 {
        let lhs = iter_primitive(&fs)?;
        let rhs = g.sub(&AElement::constant(g.ev0()?));
        let order = lhs.order().min(rhs.order());
        if !lhs.agrees_to(&rhs, order)? {
            return Err(Error::NotConstantDifference(format!(
                "I(delta g) - g + g_00 = {}",
                lhs.sub(&rhs)
            )));
        }
        return Ok(Vec::new());
    }

    let lhs = iter_primitive(&fs)?;
    let mut residual = lhs;
    if i > 0 {
        let mut left = fs.clone();
        left[i - 1] = fs[i - 1].mul(g);
        left.remove(i);
        residual = residual.sub(&iter_primitive(&left)?);
    } else {
        residual = residual.sub(&g.mul(&iter_primitive(&fs[1..])?));
    }
    if i + 1 < n {
        let mut right = fs.clone();
        right[i + 1] = g.mul(&fs[i + 1]);
        right.remove(i);
        residual = residual.add(&iter_primitive(&right)?);
    }

    let family: Vec<AElement> = (0..=i)
        .map(|j| iter_primitive(&fs[..j]))
        .collect::<Result<_>>()?;
    if i == 0 {
        return match residual.constant_value() {
            Some(c) => Ok(vec![c]),
            None => Err(Error::NotConstantDifference(residual.to_string())),
        };
    }
    solve_constants(&residual, &family)
}

/// Finds `c` with `residual = sum c_j family_j` coefficientwise below the
/// common guaranteed order.
fn solve_constants(residual: &AElement, family: &[AElement]) -> Result<Vec<Rational>> {
    let order = family
        .iter()
        .map(AElement::order)
        .chain([residual.order()])
        .min()
        .unwrap_or(EXACT_ORDER);
    let low = family
        .iter()
        .map(AElement::valuation)
        .chain([residual.valuation()])
        .min()
        .unwrap_or(0)
        .min(0);
    let t_len = family
        .iter()
        .chain([residual])
        .map(|a| a.t_coeffs().len())
        .max()
        .unwrap_or(0);
    let high = if order >= EXACT_ORDER {
        family
            .iter()
            .chain([residual])
            .flat_map(|a| {
                a.t_coeffs()
                    .iter()
                    .map(|c| c.terms().map(|(e, _)| e + 1).max().unwrap_or(0))
            })
            .max()
            .unwrap_or(0)
    } else {
        order
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 0..t_len {
        for m in low..high {
            let row: Vec<Rational> = family
                .iter()
                .map(|f| f.t_coeff(t).coeff(m))
                .collect::<Result<_>>()?;
            let b = residual.t_coeff(t).coeff(m)?;
            if row.iter().all(Zero::is_zero) && b.is_zero() {
                continue;
            }
            rows.push(row);
            rhs.push(b);
        }
    }
    linalg::solve(&rows, &rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleReport {
    pub equal: bool,
    /// The q-order to which both sides were compared.
    pub order: i64,
    pub terms: usize,
}

/// Compares `I(f_1..f_m) I(f_{m+1}..f_n)` with the sum of `I` over all shuffles.
pub fn verify_shuffle(fs: &[AElement], m: usize) -> Result<ShuffleReport> {
    if m > fs.len() {
        return Err(Error::InvalidArgument(format!(
            "split {m} exceeds length {}",
            fs.len()
        )));
    }
    let mut e = Engine::new(fs.to_vec(), fs.len());
    let ids: Vec<usize> = (0..fs.len()).collect();
    e.verify_shuffle(&ids[..m], &ids[m..], EXACT_ORDER)
}

/// Memoized evaluation of `I_eps`, `I_+`, `I_-` and `I` on words over a fixed
/// list of letters.
pub struct Engine {
    letters: Vec<AEpsElement>,
    eps_caps: Option<Vec<i64>>,
    eps_memo: HashMap<Vec<usize>, AEpsElement>,
    split_memo: HashMap<Vec<usize>, (AEpsElement, AEpsElement)>,
    value_memo: HashMap<Vec<usize>, AElement>,
}

impl Engine {
    /// An engine for words of length at most `max_len`.
    ///
    /// When some letter is truncated, terms of high eps-degree are discarded:
    /// a word of length `l` is kept to eps-degree
    /// `1 + p * (L(L+1) - l(l+1)) / 2`, with `L = max_len` and `p` the largest
    /// pole order among the letters. This covers the eps-precision consumed
    /// by every enclosing `ev_eps` and counterterm product; `project_const`
    /// still checks the final eps-order.
    pub fn new(letters: Vec<AElement>, max_len: usize) -> Self {
        let exact = letters.iter().all(|l| l.order() >= EXACT_ORDER);
        let caps = (!exact).then(|| {
            let worst = letters
                .iter()
                .map(|l| -l.valuation().min(0))
                .max()
                .unwrap_or(0);
            let big_l = max_len as i64;
            (0..=big_l)
                .map(|l| 1 + worst * (big_l * (big_l + 1) - l * (l + 1)) / 2)
                .collect()
        });
        Self::with_eps_caps(letters, caps)
    }

    /// An engine with explicit eps-degree caps indexed by word length; `None`
    /// keeps every term.
    pub fn with_eps_caps(letters: Vec<AElement>, eps_caps: Option<Vec<i64>>) -> Self {
        Engine {
            letters: letters.iter().map(AEpsElement::from).collect(),
            eps_caps,
            eps_memo: HashMap::new(),
            split_memo: HashMap::new(),
            value_memo: HashMap::new(),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    fn cap(&self, x: AEpsElement, len: usize) -> AEpsElement {
        match self.eps_caps.as_ref().and_then(|c| c.get(len)) {
            Some(&cap) => x.truncate_eps(cap),
            None => x,
        }
    }

    /// `I_eps(w_1 * I_eps(w_2, ...))`, with `I_eps(f) = F - ev_eps(F)`.
    pub fn i_eps(&mut self, w: &[usize]) -> AEpsElement {
        if w.is_empty() {
            return AEpsElement::one();
        }
        if let Some(v) = self.eps_memo.get(w) {
            return v.clone();
        }
        let rest = self.i_eps(&w[1..]);
        let big_f = self.letters[w[0]].mul(&rest).antiderivative();
        let value = self.cap(big_f.sub(&big_f.ev_eps()), w.len());
        self.eps_memo.insert(w.to_vec(), value.clone());
        value
    }

    /// `(I_+(w), I_-(w))`.
    pub fn birkhoff(&mut self, w: &[usize]) -> (AEpsElement, AEpsElement) {
        if w.is_empty() {
            return (AEpsElement::one(), AEpsElement::one());
        }
        if let Some(v) = self.split_memo.get(w) {
            return v.clone();
        }
        let mut x = self.i_eps(w);
        for i in 1..w.len() {
            let prefix = self.i_eps(&w[..i]);
            let (_, minus) = self.birkhoff(&w[i..]);
            if !minus.coeffs().is_empty() {
                x = x.add(&prefix.mul(&minus));
            }
        }
        let (plus, minus) = self.cap(x, w.len()).split_pm();
        let value = (plus, minus.neg());
        self.split_memo.insert(w.to_vec(), value.clone());
        value
    }

    pub fn i_plus(&mut self, w: &[usize]) -> AEpsElement {
        self.birkhoff(w).0
    }

    pub fn i_minus(&mut self, w: &[usize]) -> AEpsElement {
        self.birkhoff(w).1
    }

    pub fn iter_primitive(&mut self, w: &[usize]) -> Result<AElement> {
        if w.is_empty() {
            return Ok(AElement::one());
        }
        if let Some(v) = self.value_memo.get(w) {
            return Ok(v.clone());
        }
        let value = self.i_plus(w).project_const()?;
        self.value_memo.insert(w.to_vec(), value.clone());
        Ok(value)
    }

    /// Both sides of the shuffle identity for `I(a) I(b)`, compared below
    /// `min(limit, guaranteed order)`.
    pub fn verify_shuffle(
        &mut self,
        a: &[usize],
        b: &[usize],
        limit: i64,
    ) -> Result<ShuffleReport> {
        let left = self.iter_primitive(a)?.mul(&self.iter_primitive(b)?);
        let words = interleavings(a, b);
        let mut right = AElement::zero();
        for w in &words {
            right = right.add(&self.iter_primitive(w)?);
        }
        let order = left.order().min(right.order()).min(limit);
        Ok(ShuffleReport {
            equal: left.agrees_to(&right, order)?,
            order,
            terms: words.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q(e: i64) -> AElement {
        AElement::monomial(int(1), e, 0)
    }

    fn eps_mono(c: i64, qe: i64, ee: i64, t: u32, te: u32) -> AEpsElement {
        AEpsElement::monomial(int(c), qe, ee, t, te)
    }

    fn t_minus_teps() -> AEpsElement {
        AEpsElement::t().sub(&AEpsElement::t_eps())
    }

    #[test]
    fn plain_primitives() {
        assert_eq!(primitive_i(&q(-1)).unwrap(), q(-1).neg());
        assert_eq!(primitive_i(&q(1)).unwrap(), q(1));
        assert_eq!(primitive_i(&AElement::one()).unwrap(), AElement::t());
    }

    #[test]
    fn holomorphic_recursion() {
        assert_eq!(iter_primitive_holo(&[]).unwrap(), AElement::one());
        assert_eq!(
            iter_primitive_holo(&[AElement::one(), AElement::one()]).unwrap(),
            AElement::monomial(frac(1, 2), 0, 2)
        );
        assert_eq!(
            iter_primitive_holo(&[q(1), q(1)]).unwrap(),
            AElement::monomial(frac(1, 2), 2, 0)
        );
        assert_eq!(
            iter_primitive_holo(&[q(1), q(-1)]),
            Err(Error::NotHolomorphic {
                index: 1,
                valuation: -1
            })
        );
    }

    #[test]
    fn perturbed_primitives() {
        assert_eq!(iter_eps(&[AElement::one()]), t_minus_teps());
        let expected = t_minus_teps()
            .add(&eps_mono(1, -1, 1, 0, 0))
            .sub(&AEpsElement::one());
        assert_eq!(iter_eps(&[q(-1), q(1)]), expected);
        let expected = t_minus_teps()
            .neg()
            .add(&eps_mono(1, 1, -1, 0, 0))
            .sub(&AEpsElement::one());
        assert_eq!(iter_eps(&[q(1), q(-1)]), expected);
    }

    #[test]
    fn birkhoff_pairs() {
        assert_eq!(
            birkhoff(&[q(-1)]),
            (eps_mono(-1, -1, 0, 0, 0), eps_mono(-1, 0, -1, 0, 0))
        );
        assert_eq!(birkhoff(&[q(1), q(-1)]).0, t_minus_teps().neg());
        assert_eq!(
            birkhoff(&[q(1)]),
            (
                eps_mono(1, 1, 0, 0, 0).sub(&eps_mono(1, 0, 1, 0, 0)),
                AEpsElement::zero()
            )
        );
        assert_eq!(birkhoff(&[]), (AEpsElement::one(), AEpsElement::one()));
    }

    #[test]
    fn renormalized_worked_example() {
        assert_eq!(
            iter_primitive(&[q(-1), q(1)]).unwrap(),
            AElement::t().sub(&AElement::one())
        );
        assert_eq!(iter_primitive(&[q(1), q(-1)]).unwrap(), AElement::t().neg());
        assert_eq!(iter_primitive(&[q(-1)]).unwrap(), q(-1).neg());
    }

    #[test]
    fn r_fold_examples() {
        assert_eq!(
            r_fold_primitive(&AElement::one(), 2).unwrap(),
            AElement::monomial(frac(1, 2), 0, 2)
        );
        assert_eq!(r_fold_primitive(&q(1), 2).unwrap(), q(1));
        assert_eq!(
            r_fold_primitive(&q(-2), 3).unwrap(),
            AElement::monomial(frac(-1, 8), -2, 0)
        );
    }

    #[test]
    fn integration_by_parts_constants() {
        let c = ibp_constants(&[q(1), q(-1)], 1, &q(1)).unwrap();
        assert_eq!(c, vec![int(1)]);
        assert!(ibp_constants(&[q(1)], 1, &q(1)).unwrap().is_empty());
        let g = q(2);
        let fs = [AElement::one(), g.delta(), q(1)];
        let cs = ibp_constants(&fs, 2, &g).unwrap();
        assert_eq!(cs.len(), 2);
        let cs_last = ibp_constants(&[q(-1), q(1)], 2, &q(1)).unwrap();
        assert_eq!(cs_last.len(), 2);
    }

    #[test]
    fn shuffle_examples() {
        let r = verify_shuffle(&[q(-1), q(1)], 1).unwrap();
        assert!(r.equal);
        assert!(verify_shuffle(&[AElement::one()], 0).unwrap().equal);
        assert!(verify_shuffle(&[q(-1), q(-1), q(1)], 1).unwrap().equal);
        assert!(
            verify_shuffle(&[q(-2), q(1), q(-1), AElement::one()], 2)
                .unwrap()
                .equal
        );
    }

    #[test]
    fn required_order_bound() {
        let fs = [q(-2), q(1), q(-1)];
        assert_eq!(required_input_order(&fs, 10), 10 + 3 + 3);
        let short = [AElement::from_series(crate::series::TruncatedLaurent::new(
            -1,
            vec![int(1)],
            5,
        ))];
        assert!(matches!(
            iter_primitive_to(&short, 10),
            Err(Error::InsufficientPrecision { .. })
        ));
    }
}
