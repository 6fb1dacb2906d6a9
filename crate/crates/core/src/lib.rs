//! Resurgence and asymptotic resurgence of monomial ideals, with exact
//! arithmetic throughout.

pub mod config;
pub mod engine;
pub mod error;
pub mod fatpoints;
pub mod fleet;
pub mod lp;
pub mod monomial;
pub mod newton;
pub mod p2;
pub mod par;
pub mod rational;
pub mod vertices;

pub use error::{Error, Result};
pub use fatpoints::MonomialFatScheme;
pub use monomial::{ExponentVector, MonomialIdeal, Verdict};
pub use rational::Rational;
