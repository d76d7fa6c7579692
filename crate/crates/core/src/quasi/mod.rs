//! Quasimodular forms, the derivative calculus, and the decomposition of
//! `QM_k` into derivatives plus an explicit complement.

mod decompose;
mod form;
mod independence;

pub use decompose::{
    bol_split, decompose_complement, delta_power_bol, depth_reduce, determination_bound,
    dim_tilde_m, pole_support, quotient_class, reassemble, tilde_divisor, tilde_membership,
    Decomposition, QuotientClass,
};
pub use form::{coefficient_functions, delta_j, j_rational, qm_delta, qm_delta_pow, theta, QMForm};
pub use independence::{independence_check, IndependenceReport, WeightBlock};

#[cfg(test)]
mod tests;
