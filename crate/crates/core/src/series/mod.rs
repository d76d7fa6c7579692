//! Exact truncated series: Laurent series in `q`, bivariate Laurent series in
//! `(q, eps)`, and their polynomial extensions by `t` and `t_eps`.
//!
//! Every value carries guaranteed orders. Operations derive output orders
//! conservatively from their inputs, and reading a coefficient beyond the
//! guarantee fails with [`Error::InsufficientPrecision`](crate::Error).

mod aelement;
mod aeps;
mod bilaurent;
pub(crate) mod dense;
pub mod json;
mod laurent;
pub mod render;

pub use aelement::AElement;
pub use aeps::AEpsElement;
pub use bilaurent::BiLaurent;
pub use laurent::TruncatedLaurent;

/// Order tag of exact (polynomial) data.
pub const EXACT_ORDER: i64 = i64::MAX / 4;

pub(crate) fn clamp_order(order: i64) -> i64 {
    if order >= EXACT_ORDER / 2 {
        EXACT_ORDER
    } else {
        order
    }
}

/// The guaranteed orders of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderContract {
    pub q_order: i64,
    pub eps_order: i64,
}
