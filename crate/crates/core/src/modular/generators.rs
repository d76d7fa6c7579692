//! q-expansions of E2, E4, E6, Delta and j, cached process-wide.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{int, Rational};
use crate::series::TruncatedLaurent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E2,
    E4,
    E6,
    Delta,
    J,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::E2 => "E2",
            Generator::E4 => "E4",
            Generator::E6 => "E6",
            Generator::Delta => "Delta",
            Generator::J => "j",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "E2" => Generator::E2,
            "E4" => Generator::E4,
            "E6" => Generator::E6,
            "Delta" => Generator::Delta,
            "j" => Generator::J,
            _ => return None,
        })
    }
}

fn cache() -> &'static RwLock<HashMap<Generator, TruncatedLaurent>> {
    static CACHE: OnceLock<RwLock<HashMap<Generator, TruncatedLaurent>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `sum_{d | n} d^k`.
fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            if d * d != n {
                s += BigInt::from(n / d).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `1 + c * sum_{n >= 1} sigma_k(n) q^n`.
fn eisenstein(c: i64, k: u32, order: i64) -> TruncatedLaurent {
    let mut coeffs = vec![int(1)];
    for n in 1..order.max(1) {
        coeffs.push(Rational::from_integer(sigma(k, n as u64) * c));
    }
    TruncatedLaurent::new(0, coeffs, order)
}

fn compute(g: Generator, order: i64) -> TruncatedLaurent {
    match g {
        Generator::E2 => eisenstein(-24, 1, order),
        Generator::E4 => eisenstein(240, 3, order),
        Generator::E6 => eisenstein(-504, 5, order),
        Generator::Delta => {
            let e4 = generator_series(Generator::E4, order);
            let e6 = generator_series(Generator::E6, order);
            let d = &(&(&e4 * &e4) * &e4) - &(&e6 * &e6);
            d.scale(&Rational::new(1.into(), 1728.into()))
        }
        Generator::J => {
            let e4 = generator_series(Generator::E4, order + 2);
            let delta = generator_series(Generator::Delta, order + 2);
            let inv = delta.invert().expect("Delta has leading coefficient 1");
            (&(&(&e4 * &e4) * &e4) * &inv).with_order(order)
        }
    }
}

/// The expansion of `g` with guaranteed q-order `order`.
pub fn generator_series(g: Generator, order: i64) -> TruncatedLaurent {
    if let Some(s) = cache().read().expect("cache lock").get(&g) {
        if s.order() >= order {
            return s.with_order(order);
        }
    }
    let s = compute(g, order);
    let mut w = cache().write().expect("cache lock");
    let keep = w.get(&g).is_none_or(|old| old.order() < s.order());
    if keep {
        w.insert(g, s.clone());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(g: Generator, order: i64) -> Vec<Rational> {
        let s = generator_series(g, order);
        (s.valuation().min(0)..order)
            .map(|e| s.coeff(e).unwrap())
            .collect()
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(coeffs(Generator::E4, 3), vec![int(1), int(240), int(2160)]);
        assert_eq!(
            coeffs(Generator::E6, 3),
            vec![int(1), int(-504), int(-16632)]
        );
        assert_eq!(coeffs(Generator::E2, 3), vec![int(1), int(-24), int(-72)]);
        assert_eq!(
            coeffs(Generator::Delta, 4),
            vec![int(0), int(1), int(-24), int(252)]
        );
        let j = generator_series(Generator::J, 2);
        assert_eq!(j.coeff(-1).unwrap(), int(1));
        assert_eq!(j.coeff(0).unwrap(), int(744));
        assert_eq!(j.coeff(1).unwrap(), int(196884));
        assert_eq!(j.order(), 2);
    }
}
