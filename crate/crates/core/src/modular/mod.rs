//! Meromorphic modular forms for SL2(Z) as homogeneous rational functions of
//! E4 and E6.

mod divisor;
mod form;
mod generators;
mod lemma;

pub use divisor::{
    basis_mk_d, dim_m, dim_s, g_d, holomorphic_monomials, mmf_divisor, u_p, valence_check, Divisor,
    PointKey, ResidualFactor, ValenceReport,
};
pub use form::MeroModForm;
pub use generators::{generator_series, Generator};
pub use lemma::{lemma_construction_i, lemma_construction_ii};
