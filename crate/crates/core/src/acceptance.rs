//! The acceptance suite: twelve end-to-end checks, each against an oracle that
//! does not share code with the engine under test.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::modular::{
    basis_mk_d, dim_m, generator_series, holomorphic_monomials, mmf_divisor, valence_check,
    Divisor, Generator, MeroModForm, PointKey,
};
use crate::poly::UniPoly;
use crate::quasi::{
    decompose_complement, delta_power_bol, dim_tilde_m, independence_check, qm_delta, reassemble,
    tilde_membership, QMForm,
};
use crate::rational::{frac, int, Rational};
use crate::renorm::{ibp_constants, iter_primitive_holo, r_fold_primitive, Engine};
use crate::series::{AElement, AEpsElement, TruncatedLaurent};
use crate::shuffle::{lyndon_words, necklace_count, radford_decompose, recompose, ShuffleElement};

/// q-order at which both sides of the shuffle identity are compared.
pub const SHUFFLE_ORDER: i64 = 40;
/// Input precision for the shuffle pool: `SHUFFLE_ORDER + |V| + n` for the
/// worst word (four letters `q^-2`).
pub const SHUFFLE_INPUT_ORDER: i64 = 52;
pub const SHUFFLE_MAX_LEN: usize = 4;
pub const RANDOM_LISTS: usize = 200;
pub const HOLOMORPHIC_LISTS: usize = 100;
pub const RANDOM_FORMS: usize = 100;
pub const GENERATOR_ORDER: i64 = 200;
/// Precision of truncated letters in the r-fold check, and the order the
/// result must still be exact to.
pub const R_FOLD_INPUT_ORDER: i64 = 60;
pub const R_FOLD_MIN_ORDER: i64 = 40;
pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({}; {:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Check = fn(u64) -> std::result::Result<String, String>;

const CRITERIA: [(u32, &str, Check); 12] = [
    (1, "worked example", worked_example),
    (2, "shuffle identity", shuffle_identity),
    (3, "delta law and counterterm constancy", delta_law),
    (4, "holomorphic compatibility", holomorphic_compatibility),
    (5, "integration-by-parts constant", ibp_constant),
    (6, "r-fold closed form", r_fold),
    (7, "Bol identity", bol_identity),
    (8, "decomposition round-trip", decomposition_round_trip),
    (9, "dimension formula", dimension_formula),
    (10, "independent complement family", complement_family),
    (11, "Radford and Lyndon", radford_lyndon),
    (12, "generators and valence", generators_valence),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run(id: u32, seed: u64) -> Option<CriterionResult> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check(seed);
    let seconds = start.elapsed().as_secs_f64();
    Some(match outcome {
        Ok(detail) => CriterionResult {
            id,
            name,
            passed: true,
            detail,
            seconds,
        },
        Err(detail) => CriterionResult {
            id,
            name,
            passed: false,
            detail,
            seconds,
        },
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run(c.0, seed)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Oracles

/// `sigma_k(n)` by trial division.
pub fn divisor_sum(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `1 + c * sum sigma_k(n) q^n` below `order`.
pub fn eisenstein_oracle(c: i64, k: u32, order: i64) -> Vec<BigInt> {
    (0..order)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                divisor_sum(n as u64, k) * c
            }
        })
        .collect()
}

/// `q prod (1 - q^n)^24` below `order`.
pub fn delta_product_oracle(order: i64) -> Vec<BigInt> {
    let len = order.max(1) as usize;
    // prod (1 - q^n) as integer coefficients of q^0 .. q^(len - 2).
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    for n in 1..len {
        for i in (n..len).rev() {
            let t = p[i - n].clone();
            p[i] -= t;
        }
    }
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for _ in 0..24 {
        let mut next = vec![BigInt::zero(); len];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in p.iter().enumerate().take(len - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    let mut out = vec![BigInt::zero(); len];
    out[1..len].clone_from_slice(&acc[..len - 1]);
    out
}

/// `a_0 t^r / r! + sum_{n != 0} a_n q^n / n^r` for a t-free `f`.
pub fn r_fold_oracle(f: &TruncatedLaurent, r: u32) -> AElement {
    let mut t_coeffs = vec![TruncatedLaurent::zero_to(f.order()); r as usize + 1];
    let terms: Vec<(i64, Rational)> = f
        .terms()
        .filter(|(n, _)| *n != 0)
        .map(|(n, c)| (n, c / int(n).pow(r as i32)))
        .collect();
    let start = terms.first().map(|t| t.0).unwrap_or(0);
    let end = terms.last().map(|t| t.0 + 1).unwrap_or(0);
    let mut dense = vec![Rational::zero(); (end - start).max(0) as usize];
    for (n, c) in terms {
        dense[(n - start) as usize] = c;
    }
    t_coeffs[0] = TruncatedLaurent::new(start, dense, f.order());
    let a0 = f.coeff(0).unwrap_or_else(|_| Rational::zero());
    let fact: BigInt = (1..=r).map(BigInt::from).product();
    t_coeffs[r as usize] =
        TruncatedLaurent::constant(a0 / Rational::from(fact)).with_order(f.order());
    AElement::new(t_coeffs)
}

/// Lyndon test straight from the definition: strictly smaller than every proper suffix.
pub fn lyndon_by_definition(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    words
}

// ---------------------------------------------------------------------------
// Random inputs

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = rng.gen_range(-9i64..=9);
    if n == 0 {
        n = 1;
    }
    frac(n, rng.gen_range(1..=4))
}

/// A random Laurent polynomial with exponents in `lo..=hi`, sometimes times `t`.
fn random_letter(rng: &mut ChaCha8Rng, lo: i64, hi: i64, allow_t: bool) -> AElement {
    let terms = rng.gen_range(1..=3);
    let mut f = AElement::zero();
    for _ in 0..terms {
        let e = rng.gen_range(lo..=hi);
        f = f.add(&AElement::monomial(small_rational(rng), e, 0));
    }
    if f.is_zero() {
        f = AElement::monomial(int(1), hi, 0);
    }
    if allow_t && rng.gen_bool(0.25) {
        f = f.mul(&AElement::t());
    }
    f
}

/// A random meromorphic modular form of weight `w` with poles of order at
/// most 4 at `inf`, `i`, `rho` and `j = 2`.
pub fn random_mero(rng: &mut ChaCha8Rng, w: i64) -> MeroModForm {
    let mut shapes = Vec::new();
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let rest = w - 4 * a - 6 * b;
            if rest % 12 != 0 {
                continue;
            }
            let e = rest / 12;
            for m in 0..=4 {
                if (-4..=4).contains(&(e + m)) {
                    shapes.push((a, b, e, m));
                }
            }
        }
    }
    let mut f = MeroModForm::zero(w);
    for _ in 0..rng.gen_range(1..=2) {
        let (a, b, e, m) = shapes[rng.gen_range(0..shapes.len())];
        let den = UniPoly::from_ints(&[-2, 1]).pow(m as u32);
        let term = MeroModForm::from_parts(small_rational(rng), a, b, e, UniPoly::one(), den)
            .expect("well-formed parts");
        f = f.add(&term).expect("equal weights");
    }
    f
}

/// A random quasimodular form of weight `k` and depth at most `max_depth`.
pub fn random_qm(rng: &mut ChaCha8Rng, k: i64, max_depth: usize) -> QMForm {
    let depth = rng.gen_range(0..=max_depth);
    let coeffs = (0..=depth)
        .map(|r| random_mero(rng, k - 2 * r as i64))
        .collect();
    QMForm::new(coeffs, k).expect("weights are consistent")
}

fn random_even_weight(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    2 * rng.gen_range(lo / 2..=hi / 2)
}

// ---------------------------------------------------------------------------
// Criteria

fn q(e: i64) -> AElement {
    AElement::monomial(int(1), e, 0)
}

fn worked_example(_: u64) -> std::result::Result<String, String> {
    let mut e = Engine::with_eps_caps(vec![q(-1), q(1), AElement::one()], None);
    let t_minus = AEpsElement::t().sub(&AEpsElement::t_eps());
    let checks: Vec<(&str, bool)> = vec![
        (
            "I(q^-1) = -q^-1",
            ok(e.iter_primitive(&[0]))? == q(-1).neg(),
        ),
        ("I(q) = q", ok(e.iter_primitive(&[1]))? == q(1)),
        ("I_eps(1) = t - t_eps", e.i_eps(&[2]) == t_minus),
        (
            "I_eps(q^-1, q) = t - t_eps + q^-1 eps - 1",
            e.i_eps(&[0, 1])
                == t_minus
                    .add(&AEpsElement::monomial(int(1), -1, 1, 0, 0))
                    .sub(&AEpsElement::one()),
        ),
        (
            "I_+(q, q^-1) = -t + t_eps",
            e.i_plus(&[1, 0]) == t_minus.neg(),
        ),
        (
            "I(q^-1, q) = t - 1",
            ok(e.iter_primitive(&[0, 1]))? == AElement::t().sub(&AElement::one()),
        ),
        (
            "I(q, q^-1) = -t",
            ok(e.iter_primitive(&[1, 0]))? == AElement::t().neg(),
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    ensure(failed.is_empty(), || {
        format!("mismatch: {}", failed.join("; "))
    })?;
    Ok(format!("{} identities exact", checks.len()))
}

fn shuffle_pool(order: i64) -> Vec<AElement> {
    vec![
        AElement::one(),
        q(1),
        q(-1),
        q(-2),
        AElement::from_series(generator_series(Generator::E4, order)),
        AElement::from_series(
            MeroModForm::delta()
                .inv()
                .expect("Delta is invertible")
                .expand(order),
        ),
    ]
}

fn shuffle_identity(_: u64) -> std::result::Result<String, String> {
    let pool = shuffle_pool(SHUFFLE_INPUT_ORDER);
    let mut engine = Engine::new(pool.clone(), SHUFFLE_MAX_LEN);
    let mut checks = 0usize;
    for len in 0..=SHUFFLE_MAX_LEN {
        for w in all_words(pool.len(), len) {
            for m in 0..=w.len() {
                let r = ok(engine.verify_shuffle(&w[..m], &w[m..], SHUFFLE_ORDER))?;
                ensure(r.order >= SHUFFLE_ORDER, || {
                    format!("word {w:?} split {m}: precision only to q^{}", r.order)
                })?;
                ensure(r.equal, || format!("word {w:?} split {m}: sides differ"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} splits equal to O(q^{SHUFFLE_ORDER})"))
}

fn delta_law(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..RANDOM_LISTS {
        let n = rng.gen_range(1..=3);
        let letters: Vec<AElement> = (0..n)
            .map(|_| random_letter(&mut rng, -2, 2, true))
            .collect();
        let mut e = Engine::with_eps_caps(letters.clone(), None);
        let w: Vec<usize> = (0..n).collect();
        let value = ok(e.iter_primitive(&w))?;
        let rest = ok(e.iter_primitive(&w[1..]))?;
        ensure(value.delta() == letters[0].mul(&rest), || {
            format!("case {case}: delta I(f) != f_1 I(f_2..)")
        })?;
        let (plus, minus) = e.birkhoff(&w);
        let plus_rest = e.i_plus(&w[1..]);
        ensure(
            plus.delta() == AEpsElement::from(&letters[0]).mul(&plus_rest),
            || format!("case {case}: delta I_+ law fails"),
        )?;
        ensure(minus.is_q_and_t_free() && minus.delta().is_zero(), || {
            format!("case {case}: I_- is not constant")
        })?;
    }
    Ok(format!("{RANDOM_LISTS} random lists"))
}

fn holomorphic_compatibility(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let e4 = AElement::from_series(generator_series(Generator::E4, 30));
    for case in 0..HOLOMORPHIC_LISTS {
        let n = rng.gen_range(1..=4);
        let letters: Vec<AElement> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    e4.clone()
                } else {
                    random_letter(&mut rng, 0, 3, false)
                }
            })
            .collect();
        let mut e = Engine::new(letters.clone(), n);
        let w: Vec<usize> = (0..n).collect();
        for i in 0..n {
            ensure(e.i_minus(&w[i..]).is_zero(), || {
                format!("case {case}: I_- of a holomorphic list is nonzero")
            })?;
        }
        let renormalized = ok(e.iter_primitive(&w))?;
        let plain = ok(iter_primitive_holo(&letters))?;
        let order = renormalized.order().min(plain.order());
        ensure(
            order >= 25 && ok(renormalized.agrees_to(&plain, order))?,
            || format!("case {case}: renormalized and plain primitives differ"),
        )?;
    }
    Ok(format!("{HOLOMORPHIC_LISTS} holomorphic lists"))
}

fn ibp_constant(_: u64) -> std::result::Result<String, String> {
    let c = ok(ibp_constants(&[q(1).delta(), q(-1)], 1, &q(1)))?;
    ensure(c == vec![int(1)], || {
        format!("constants {c:?}, expected [1]")
    })?;
    Ok("c_1 = 1".into())
}

fn r_fold(_: u64) -> std::result::Result<String, String> {
    let pool = shuffle_pool(R_FOLD_INPUT_ORDER);
    let mut checks = 0;
    for f in &pool {
        let series = f.as_series().expect("pool letters are t-free");
        for r in 1..=4u32 {
            let value = ok(r_fold_primitive(f, r as usize))?;
            let oracle = r_fold_oracle(&series, r);
            let order = value.order().min(oracle.order());
            ensure(order >= R_FOLD_MIN_ORDER.min(oracle.order()), || {
                format!("I^{r} kept precision only to q^{order}")
            })?;
            ensure(ok(value.agrees_to(&oracle, order))?, || {
                format!("I^{r}({series}) differs from the closed form")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} cases"))
}

/// Inputs of weight `2 - k`: `Delta^-n E4^a E6^b`, their products with `j`,
/// and `1`, `j` at `k = 2`.
fn bol_inputs(k: i64) -> Vec<MeroModForm> {
    let mut out = Vec::new();
    if k == 2 {
        out.push(MeroModForm::one());
        out.push(MeroModForm::j());
    }
    for n in 1..=2 {
        for (a, b) in holomorphic_monomials(2 - k + 12 * n) {
            let f = MeroModForm::monomial(int(1), a, b, -n);
            out.push(f.mul(&MeroModForm::j()));
            out.push(f);
        }
    }
    out
}

fn bol_identity(_: u64) -> std::result::Result<String, String> {
    let mut checks = 0;
    for k in [2i64, 4, 6, 8, 12, 14] {
        for g in bol_inputs(k) {
            let image = ok(delta_power_bol(&g, k))?;
            let order = 12;
            let oracle = g.expand(order).delta_pow((k - 1) as u32);
            ensure(ok(image.expand(order).agrees_to(&oracle, order))?, || {
                format!("delta^{}({g}) disagrees with the series", k - 1)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} inputs E2-free"))
}

fn decomposition_round_trip(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut max_order = 0;
    for case in 0..RANDOM_FORMS {
        let k = random_even_weight(&mut rng, -4, 16);
        let f = random_qm(&mut rng, k, 4);
        let d = decompose_complement(&f, None)
            .map_err(|e| format!("case {case} (k = {k}, f = {f}): {e}"))?;
        ensure(ok(reassemble(&d))? == f, || {
            format!("case {case}: reassembly differs")
        })?;
        if k >= 2 {
            ensure(ok(tilde_membership(&d.class.tilde_part, k))?, || {
                format!("case {case}: complement part outside the bounds")
            })?;
        }
        max_order = max_order.max(d.verified_order);
        let h = random_qm(&mut rng, k - 2, 3);
        let shifted = ok(f.add(&ok(qm_delta(&h))?))?;
        let d2 = decompose_complement(&shifted, None)
            .map_err(|e| format!("case {case} shifted: {e}"))?;
        ensure(d2.class == d.class, || {
            format!("case {case}: class changed under adding a derivative")
        })?;
    }
    Ok(format!(
        "{RANDOM_FORMS} forms, determination bound up to q^{max_order}"
    ))
}

fn supports() -> Vec<Vec<PointKey>> {
    let extra = [PointKey::I, PointKey::Rho, PointKey::from_j(int(2))];
    (0..8u32)
        .map(|mask| {
            let mut s = vec![PointKey::Infinity];
            s.extend(
                (0..3)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| extra[i].clone()),
            );
            s
        })
        .collect()
}

fn brute_dim_m(k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut n = 0;
    for b in 0..=k / 6 {
        if (k - 6 * b) % 4 == 0 {
            n += 1;
        }
    }
    n
}

fn dimension_formula(seed: u64) -> std::result::Result<String, String> {
    let mut rows = 0;
    for k in (2..=24).step_by(2) {
        for s in supports() {
            let (formula, basis) = ok(dim_tilde_m(k, &s))?;
            ensure(formula == basis, || {
                format!("k = {k}, S = {s:?}: formula {formula}, basis {basis}")
            })?;
            rows += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let points = [
        PointKey::Infinity,
        PointKey::I,
        PointKey::Rho,
        PointKey::from_j(int(2)),
    ];
    for case in 0..20 {
        let k = random_even_weight(&mut rng, -12, 12);
        let d = Divisor::from_entries(points.iter().map(|p| (p.clone(), rng.gen_range(0..=3))));
        let big_k = int(k) + d.degree() * int(12);
        let big_k = big_k.to_integer().to_i64().expect("integral weight");
        let basis = ok(basis_mk_d(k, &d))?;
        ensure(basis.len() as i64 == brute_dim_m(big_k), || {
            format!(
                "case {case}: {} basis forms, dim M_{big_k} = {}",
                basis.len(),
                brute_dim_m(big_k)
            )
        })?;
        ensure(dim_m(big_k) == brute_dim_m(big_k), || {
            format!("dim M_{big_k} formula")
        })?;
        for b in &basis {
            ensure(b.weight() == k, || format!("case {case}: basis weight"))?;
            let div = ok(mmf_divisor(b, &[]))?;
            ensure(div.entries().all(|(p, n)| n >= -d.get(p)), || {
                format!("case {case}: basis element {b} exceeds the divisor")
            })?;
        }
        let n_inf = d.get(&PointKey::Infinity);
        let order = big_k / 12 + 2 - n_inf;
        let rows_q: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| {
                let s = b.expand(order);
                (-n_inf..order)
                    .map(|e| s.coeff(e).expect("in range"))
                    .collect()
            })
            .collect();
        ensure(crate::linalg::rank(&rows_q) == basis.len(), || {
            format!("case {case}: basis is linearly dependent")
        })?;
    }
    Ok(format!("{rows} (k, S) rows, 20 divisor instances"))
}

fn complement_family(_: u64) -> std::result::Result<String, String> {
    let f4a = MeroModForm::monomial(int(1), -2, 0, 1);
    let f4b = MeroModForm::monomial(int(1), 1, -2, 1);
    let f6 = MeroModForm::monomial(int(1), -3, 1, 1);
    ensure(ok(tilde_membership(&f4a, 4))?, || {
        "F4a not in the complement".into()
    })?;
    ensure(ok(tilde_membership(&f4b, 4))?, || {
        "F4b not in the complement".into()
    })?;
    ensure(ok(tilde_membership(&f6, 6))?, || {
        "F6 not in the complement".into()
    })?;
    let fs: Vec<QMForm> = [MeroModForm::one(), f4a, f4b, f6]
        .into_iter()
        .map(QMForm::from_modular)
        .collect();
    let report = ok(independence_check(&fs))?;
    ensure(report.independent(), || {
        format!("rank {} of {}", report.rank, report.count)
    })?;
    Ok(format!("rank {} of {}", report.rank, report.count))
}

fn radford_lyndon(_: u64) -> std::result::Result<String, String> {
    let mut words = 0;
    for len in 0..=4 {
        for w in all_words(2, len) {
            let x = ShuffleElement::<Rational>::word(w.clone());
            let p = radford_decompose(&x);
            ensure(recompose(&p) == x, || {
                format!("word {w:?} does not round-trip")
            })?;
            words += 1;
        }
    }
    for k in [2usize, 3] {
        let generated = lyndon_words(k, 6);
        for n in 1..=6 {
            let brute: BTreeSet<Vec<usize>> = all_words(k, n)
                .into_iter()
                .filter(|w| lyndon_by_definition(w))
                .collect();
            let got: BTreeSet<Vec<usize>> =
                generated.iter().filter(|w| w.len() == n).cloned().collect();
            ensure(got == brute, || {
                format!("Lyndon words differ for k = {k}, n = {n}")
            })?;
            let expected = necklace_count(k as u64, n as u64);
            ensure(brute.len() as u64 == expected, || {
                format!(
                    "k = {k}, n = {n}: {} words, necklace count {expected}",
                    brute.len()
                )
            })?;
        }
    }
    Ok(format!("{words} words round-trip, counts match for n <= 6"))
}

fn check_series(
    name: &str,
    s: &TruncatedLaurent,
    oracle: &[BigInt],
) -> std::result::Result<(), String> {
    for (n, c) in oracle.iter().enumerate() {
        let got = ok(s.coeff(n as i64))?;
        ensure(got == Rational::from(c.clone()), || {
            format!("{name}: coefficient of q^{n} is {got}, expected {c}")
        })?;
    }
    Ok(())
}

fn generators_valence(seed: u64) -> std::result::Result<String, String> {
    let n = GENERATOR_ORDER;
    check_series(
        "E2",
        &generator_series(Generator::E2, n),
        &eisenstein_oracle(-24, 1, n),
    )?;
    check_series(
        "E4",
        &generator_series(Generator::E4, n),
        &eisenstein_oracle(240, 3, n),
    )?;
    check_series(
        "E6",
        &generator_series(Generator::E6, n),
        &eisenstein_oracle(-504, 5, n),
    )?;
    check_series(
        "Delta",
        &generator_series(Generator::Delta, n),
        &delta_product_oracle(n),
    )?;

    let mut pool = vec![
        MeroModForm::e4(),
        MeroModForm::e6(),
        MeroModForm::delta(),
        MeroModForm::j(),
        MeroModForm::monomial(int(1), -2, 0, 1),
        MeroModForm::monomial(int(1), 1, -2, 1),
        MeroModForm::monomial(int(1), -3, 1, 1),
    ];
    for k in [2i64, 4, 6, 8, 12, 14] {
        pool.extend(bol_inputs(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    for _ in 0..100 {
        let w = random_even_weight(&mut rng, -16, 16);
        pool.push(random_mero(&mut rng, w));
    }
    let mut checked = 0;
    for f in pool.iter().filter(|f| !f.is_zero()) {
        let report = ok(valence_check(f))?;
        ensure(report.degree * int(12) == int(f.weight()), || {
            format!("valence fails for {f}")
        })?;
        checked += 1;
    }
    Ok(format!(
        "generators exact to O(q^{n}), valence for {checked} forms"
    ))
}
