//! The commands of the `qmf` binary. Each returns its text and JSON renderings;
//! `success = false` marks a failed check (exit code 1).

use std::fmt::Write as _;

use qmf_core::acceptance;
use qmf_core::modular::PointKey;
use qmf_core::quasi::{decompose_complement, dim_tilde_m, independence_check, QMForm};
use qmf_core::rational::parse as parse_rational;
use qmf_core::renorm::{iter_primitive, required_input_order};
use qmf_core::series::{json as series_json, EXACT_ORDER};
use qmf_core::shuffle::{
    lyndon_words, necklace_count, radford_decompose, recompose, Alphabet, ShuffleElement,
};
use qmf_core::{AElement, Error, Rational};
use serde_json::{json, Value};

use crate::elab::{to_form, to_series};
use crate::error::CliError;
use crate::expr::parse_expr;

#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub success: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            success: true,
        }
    }
}

/// Working orders tried above the requested order before giving up.
const MARGINS: [i64; 5] = [8, 24, 56, 120, 248];

pub fn parse_form(src: &str) -> Result<QMForm, CliError> {
    to_form(&parse_expr(src)?)
}

/// Comma-separated points: `inf,i,rho,j=2`.
pub fn parse_support(src: &str) -> Result<Vec<PointKey>, CliError> {
    let mut out: Vec<PointKey> = Vec::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p = PointKey::parse(part)
            .map_err(|_| CliError::Usage(format!("unknown point {part:?} in --support")))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--support needs at least one point".into()));
    }
    Ok(out)
}

/// `k` or an inclusive range `a..b`.
pub fn parse_k_range(src: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("expected a weight or a range a..b, found {src:?}"));
    let (lo, hi) = match src.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<i64>().map_err(|_| bad())?,
            b.trim()
                .trim_start_matches('=')
                .parse::<i64>()
                .map_err(|_| bad())?,
        ),
        None => {
            let k = src.trim().parse::<i64>().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn support_text(s: &[PointKey]) -> String {
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Expands through `terms` coefficients from the leading exponent. `expand_to(o)`
/// returns a value known to `O(q^o)` or better, and its valuation when a
/// nonzero coefficient is known.
fn relative<T>(
    terms: i64,
    start: i64,
    mut expand_to: impl FnMut(i64) -> Result<(T, i64, Option<i64>), CliError>,
) -> Result<(T, i64), CliError> {
    let mut target = start + terms;
    for _ in 0..8 {
        let (value, order, valuation) = expand_to(target)?;
        match valuation {
            Some(v) if order >= v + terms => return Ok((value, v + terms)),
            Some(v) => target = v + terms,
            None => target += terms.max(8),
        }
    }
    // Zero to every order tried.
    let (value, order, _) = expand_to(start + terms)?;
    Ok((value, order))
}

pub fn expand(src: &str, terms: i64) -> Result<Output, CliError> {
    let e = parse_expr(src)?;
    if !e.is_series_only() {
        match to_form(&e) {
            Ok(f) => {
                let start = f
                    .coeffs()
                    .iter()
                    .filter(|c| !c.is_zero())
                    .map(|c| c.v_infinity())
                    .min()
                    .unwrap_or(0);
                let (s, order) = relative(terms, start, |o| {
                    let s = f.expand(o);
                    let v = (!s.is_zero()).then(|| s.valuation());
                    Ok((s.clone(), s.order(), v))
                })?;
                let s = s.with_order(order);
                let json = json!({
                    "expr": src,
                    "weight": f.weight(),
                    "depth": f.depth(),
                    "series": series_json::laurent(&s),
                });
                return Ok(Output::ok(s.to_string(), json));
            }
            // Not a homogeneous form: expand it as a plain series.
            Err(CliError::Elab(_)) => {}
            Err(err) => return Err(err),
        }
    }
    let start = to_series(&e, MARGINS[0])?;
    let start = if start.is_zero() {
        0
    } else {
        start.valuation()
    };
    let (v, order) = relative(terms, start, |o| {
        for margin in MARGINS {
            let v = to_series(&e, o + margin)?;
            if v.order() >= o {
                let valuation = (!v.is_zero()).then(|| v.valuation());
                return Ok((v.clone(), v.order(), valuation));
            }
        }
        Err(CliError::Compute(Error::InsufficientPrecision {
            needed: o,
            available: to_series(&e, o)?.order(),
        }))
    })?;
    let v = v.with_order(order);
    let json = json!({ "expr": src, "series": series_json::aelement(&v) });
    Ok(Output::ok(v.to_string(), json))
}

pub fn integrate(srcs: &[String], order: i64) -> Result<Output, CliError> {
    let exprs = srcs
        .iter()
        .map(|s| parse_expr(s))
        .collect::<Result<Vec<_>, _>>()?;
    let elaborate = |working: i64| -> Result<Vec<AElement>, CliError> {
        exprs.iter().map(|e| to_series(e, working)).collect()
    };
    let probe = elaborate(order + MARGINS[0])?;
    let base = required_input_order(&probe, order);
    let mut available = i64::MIN;
    for margin in MARGINS {
        let fs = elaborate(base + margin)?;
        let value = iter_primitive(&fs)?;
        if value.order() >= order {
            let value = if value.order() >= EXACT_ORDER {
                value
            } else {
                value.with_order(order)
            };
            let json = json!({ "exprs": srcs, "value": series_json::aelement(&value) });
            return Ok(Output::ok(value.to_string(), json));
        }
        available = value.order();
    }
    Err(Error::InsufficientPrecision {
        needed: order,
        available,
    }
    .into())
}

pub fn decompose(src: &str, support: Option<&[PointKey]>) -> Result<Output, CliError> {
    let f = parse_form(src)?;
    let d = decompose_complement(&f, support)?;
    let mut text = String::new();
    writeln!(text, "f     = {}", f.render()).unwrap();
    writeln!(text, "g     = {}", d.g.render()).unwrap();
    writeln!(text, "m     = {}", d.class.m_part.render()).unwrap();
    writeln!(text, "tilde = {}", d.class.tilde_part.render()).unwrap();
    write!(
        text,
        "f = D(g) + m * E2^{} + tilde, expansions checked through q^{}",
        f.weight() - 1,
        d.verified_order
    )
    .unwrap();
    let mut json = d.to_json();
    json["f"] = json!(f.render());
    json["weight"] = json!(f.weight());
    Ok(Output::ok(text, json))
}

pub fn dims(ks: &[i64], support: &[PointKey]) -> Result<Output, CliError> {
    if !support.contains(&PointKey::Infinity) {
        return Err(CliError::Usage("--support must contain inf".into()));
    }
    let s = support_text(support);
    let mut text = format!(
        "{:>4}  {:<20} {:>8} {:>6}  match\n",
        "k", "S", "formula", "basis"
    );
    let mut rows = Vec::new();
    let mut all = true;
    for &k in ks.iter().filter(|k| **k >= 2 && *k % 2 == 0) {
        let (formula, basis) = dim_tilde_m(k, support)?;
        let matched = formula == basis;
        all &= matched;
        writeln!(
            text,
            "{k:>4}  {s:<20} {formula:>8} {basis:>6}  {}",
            if matched { "yes" } else { "NO" }
        )
        .unwrap();
        rows.push(json!({
            "k": k,
            "support": support.iter().map(PointKey::to_json).collect::<Vec<_>>(),
            "formula": formula,
            "basis": basis,
            "match": matched,
        }));
    }
    if rows.is_empty() {
        return Err(CliError::Usage(
            "no even weight k >= 2 in the requested range".into(),
        ));
    }
    let verdict = if all { "all rows match" } else { "MISMATCH" };
    text.push_str(verdict);
    Ok(Output {
        text,
        json: json!({ "rows": rows, "all_match": all }),
        success: all,
    })
}

pub fn independence(srcs: &[String]) -> Result<Output, CliError> {
    let fs = srcs
        .iter()
        .map(|s| parse_form(s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = independence_check(&fs)?;
    let mut text = String::from("classes modulo derivatives:\n");
    for (i, (src, c)) in srcs.iter().zip(&report.classes).enumerate() {
        writeln!(
            text,
            "  [{}] {src}: weight {}, m = {}, tilde = {}",
            i + 1,
            c.weight,
            c.m_part.render(),
            c.tilde_part.render()
        )
        .unwrap();
    }
    text.push_str("rank certificate:\n");
    for b in &report.blocks {
        let members: Vec<String> = b.members.iter().map(|m| (m + 1).to_string()).collect();
        writeln!(
            text,
            "  weight {}: members {}, rank {} (coefficients through q^{})",
            b.weight,
            members.join(","),
            b.rank,
            b.verified_order - 1
        )
        .unwrap();
    }
    writeln!(text, "rank {} of {}", report.rank, report.count).unwrap();
    text.push_str(report.verdict());
    let mut json = report.to_json();
    json["exprs"] = json!(srcs);
    Ok(Output::ok(text, json))
}

fn alphabet(names: &[String]) -> Result<Alphabet, CliError> {
    if names.is_empty() {
        return Err(CliError::Usage("the alphabet is empty".into()));
    }
    Alphabet::new(names.iter().cloned()).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn lyndon(names: &[String], max_len: usize) -> Result<Output, CliError> {
    let a = alphabet(names)?;
    let words = lyndon_words(a.len(), max_len);
    let mut text = String::new();
    let mut by_length = Vec::new();
    let mut all = true;
    for n in 1..=max_len {
        let ws: Vec<String> = words
            .iter()
            .filter(|w| w.len() == n)
            .map(|w| a.compact(w))
            .collect();
        let expected = necklace_count(a.len() as u64, n as u64);
        all &= ws.len() as u64 == expected;
        let noun = if ws.len() == 1 { "word" } else { "words" };
        writeln!(
            text,
            "length {n}: {} {noun} (necklace count {expected})",
            ws.len()
        )
        .unwrap();
        if !ws.is_empty() {
            writeln!(text, "  {}", ws.join(" ")).unwrap();
        }
        by_length.push(json!({ "length": n, "words": ws, "necklace_count": expected }));
    }
    let all_words: Vec<String> = words.iter().map(|w| a.compact(w)).collect();
    write!(text, "total {}", all_words.len()).unwrap();
    Ok(Output {
        text,
        json: json!({
            "alphabet": names,
            "max_len": max_len,
            "words": all_words,
            "by_length": by_length,
            "counts_match": all,
        }),
        success: all,
    })
}

/// Parses `c1 [a|b] + c2 * [b|a] - ...` with optional rational coefficients.
pub fn parse_shuffle_element(
    src: &str,
    a: &Alphabet,
) -> Result<ShuffleElement<Rational>, CliError> {
    let bad = |msg: String| CliError::Usage(format!("cannot parse shuffle element {src:?}: {msg}"));
    let mut x = ShuffleElement::zero();
    let mut rest = src.trim();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Rational::from_integer(1.into());
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if !first {
            return Err(bad("expected '+' or '-' between terms".into()));
        }
        first = false;
        let open = rest.find('[').ok_or_else(|| bad("missing '['".into()))?;
        let coeff_src = rest[..open].trim().trim_end_matches('*').trim();
        let coeff_src = coeff_src
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .unwrap_or(coeff_src);
        let coeff = if coeff_src.is_empty() {
            Rational::from_integer(1.into())
        } else {
            parse_rational(coeff_src)
                .ok_or_else(|| bad(format!("bad coefficient {coeff_src:?}")))?
        };
        let close = rest.find(']').ok_or_else(|| bad("missing ']'".into()))?;
        let w = a
            .parse_word(&rest[open..=close])
            .map_err(|e| bad(e.to_string()))?;
        x.add_term(w, &(sign * coeff));
        rest = rest[close + 1..].trim_start();
    }
    Ok(x)
}

/// Letter names in `src` in sorted order: the default alphabet.
pub fn letters_of(src: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut inside = false;
    let mut current = String::new();
    for c in src.chars() {
        match c {
            '[' => inside = true,
            ']' | '|' if inside => {
                let n = current.trim().to_string();
                if !n.is_empty() && !names.contains(&n) {
                    names.push(n);
                }
                current.clear();
                if c == ']' {
                    inside = false;
                }
            }
            _ if inside => current.push(c),
            _ => {}
        }
    }
    names.sort();
    names
}

pub fn radford(src: &str, names: Option<&[String]>) -> Result<Output, CliError> {
    let names = match names {
        Some(n) => n.to_vec(),
        None => letters_of(src),
    };
    let a = alphabet(&names)?;
    let x = parse_shuffle_element(src, &a)?;
    let p = radford_decompose(&x);
    let round_trip = recompose(&p) == x;
    let text = format!(
        "{} = {}\nround trip: {}",
        x.render(&a),
        p.render(&a),
        if round_trip { "exact" } else { "FAILED" }
    );
    Ok(Output {
        text,
        json: json!({
            "alphabet": names,
            "input": x.render(&a),
            "lyndon_polynomial": p.to_json(&a),
            "text": p.render(&a),
            "round_trip": round_trip,
        }),
        success: round_trip,
    })
}

/// Runs the acceptance criteria in `ids` (all when empty) on parallel threads.
pub fn selftest(seed: u64, ids: &[u32], timings: bool) -> Result<Output, CliError> {
    let count = acceptance::criterion_count() as u32;
    let ids: Vec<u32> = if ids.is_empty() {
        (1..=count).collect()
    } else {
        ids.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > count) {
        return Err(CliError::Usage(format!(
            "no criterion {bad}; ids run 1..={count}"
        )));
    }
    let results: Vec<acceptance::CriterionResult> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| s.spawn(move || acceptance::run(id, seed).expect("valid id")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let mut text = String::new();
    for r in &results {
        let line = if timings {
            r.line()
        } else {
            format!(
                "{} [{:>2}] {} ({})",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.detail
            )
        };
        writeln!(text, "{line}").unwrap();
    }
    let passed = results.iter().filter(|r| r.passed).count();
    write!(
        text,
        "{passed} of {} criteria passed (seed {seed})",
        results.len()
    )
    .unwrap();
    let json = json!({
        "seed": seed,
        "passed": passed,
        "total": results.len(),
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    Ok(Output {
        text,
        json,
        success: passed == results.len(),
    })
}
