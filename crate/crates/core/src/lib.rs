//! Exact arithmetic for meromorphic modular and quasimodular forms on SL2(Z),
//! renormalized iterated primitives, and the shuffle algebra that organizes
//! them.

pub mod acceptance;
pub mod error;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod quasi;
pub mod rational;
pub mod renorm;
pub mod series;
pub mod shuffle;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{AElement, AEpsElement, BiLaurent, OrderContract, TruncatedLaurent};
