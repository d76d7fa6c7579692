//! Canonical JSON: exponent keys as strings, rationals as `"n/d"`, and `null`
//! for exact orders.

use serde_json::{json, Map, Value};

use super::{AElement, AEpsElement, BiLaurent, TruncatedLaurent, EXACT_ORDER};
use crate::rational::to_json_string;

fn order_tag(order: i64) -> Value {
    if order >= EXACT_ORDER {
        Value::Null
    } else {
        json!(order)
    }
}

pub fn laurent(f: &TruncatedLaurent) -> Value {
    let coeffs: Map<String, Value> = f
        .terms()
        .map(|(e, c)| (e.to_string(), json!(to_json_string(c))))
        .collect();
    json!({ "q_order": order_tag(f.order()), "coeffs": coeffs })
}

pub fn bilaurent(b: &BiLaurent) -> Value {
    let coeffs: Map<String, Value> = b
        .terms()
        .map(|(m, n, c)| (format!("{m},{n}"), json!(to_json_string(c))))
        .collect();
    json!({
        "q_order": order_tag(b.q_order()),
        "eps_order": order_tag(b.eps_order()),
        "coeffs": coeffs,
    })
}

pub fn aelement(a: &AElement) -> Value {
    let t_coeffs: Map<String, Value> = a
        .t_coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_exact_zero())
        .map(|(i, c)| (i.to_string(), laurent(c)))
        .collect();
    json!({ "text": a.to_string(), "t_coeffs": t_coeffs })
}

pub fn aeps(a: &AEpsElement) -> Value {
    let coeffs: Map<String, Value> = a
        .coeffs()
        .iter()
        .map(|((i, j), c)| (format!("{i},{j}"), bilaurent(c)))
        .collect();
    json!({ "text": a.to_string(), "coeffs": coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn laurent_json_shape() {
        let f = TruncatedLaurent::new(-1, vec![int(1), int(0), frac(1, 2)], 3);
        assert_eq!(
            laurent(&f),
            json!({"q_order": 3, "coeffs": {"-1": "1/1", "1": "1/2"}})
        );
        assert_eq!(
            laurent(&TruncatedLaurent::one()),
            json!({"q_order": null, "coeffs": {"0": "1/1"}})
        );
    }

    #[test]
    fn aelement_json_shape() {
        let x = AElement::t().sub(&AElement::one());
        let v = aelement(&x);
        assert_eq!(v["text"], "t - 1");
        assert_eq!(v["t_coeffs"]["0"]["coeffs"]["0"], "-1/1");
        assert_eq!(v["t_coeffs"]["1"]["coeffs"]["0"], "1/1");
    }
}
