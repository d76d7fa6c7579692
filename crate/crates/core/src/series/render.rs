//! Plain-text rendering of sums of monomials in `q`, `eps`, `t`, `t_eps`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Monomial {
    pub q: i64,
    pub eps: i64,
    pub t: u32,
    pub t_eps: u32,
}

impl Monomial {
    pub fn q(exp: i64) -> Self {
        Monomial {
            q: exp,
            ..Default::default()
        }
    }

    fn text(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: i64| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("q", self.q);
        push("eps", self.eps);
        push("t", self.t as i64);
        push("t_eps", self.t_eps as i64);
        parts.join("*")
    }
}

fn term_text(c: &Rational, m: &Monomial) -> (bool, String) {
    let negative = c.is_negative();
    let abs = c.abs();
    let mono = m.text();
    let body = if mono.is_empty() {
        if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        }
    } else {
        let mut s = if abs.numer().is_one() {
            mono
        } else {
            format!("{}*{}", abs.numer(), mono)
        };
        if !abs.denom().is_one() {
            s = format!("{}/{}", s, abs.denom());
        }
        s
    };
    (negative, body)
}

pub fn big_o(order: i64) -> String {
    match order {
        0 => "O(1)".to_string(),
        1 => "O(q)".to_string(),
        n => format!("O(q^{n})"),
    }
}

/// Renders `sum c_i * m_i` in the given order, with an optional `O(q^order)` tail.
pub fn render_sum(terms: &[(Rational, Monomial)], order: Option<i64>) -> String {
    let mut out = String::new();
    for (c, m) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let (neg, body) = term_text(c, m);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if let Some(n) = order {
        if out.is_empty() {
            out = big_o(n);
        } else {
            out.push_str(" + ");
            out.push_str(&big_o(n));
        }
    } else if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn renders_like_hand_written_series() {
        let terms = vec![
            (int(1), Monomial::q(0)),
            (int(240), Monomial::q(1)),
            (int(2160), Monomial::q(2)),
        ];
        assert_eq!(render_sum(&terms, Some(3)), "1 + 240*q + 2160*q^2 + O(q^3)");
        let t2 = Monomial {
            t: 2,
            ..Default::default()
        };
        assert_eq!(render_sum(&[(frac(1, 2), t2)], None), "t^2/2");
        assert_eq!(
            render_sum(&[(int(-1), Monomial::q(-1))], Some(1)),
            "-q^-1 + O(q)"
        );
        assert_eq!(render_sum(&[], None), "0");
    }
}
