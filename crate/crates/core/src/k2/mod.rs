//! Milnor `K₂` symbols on a Tate curve and the map `τ_∞` to `K*` modulo
//! `p^ν`-th powers.
//!
//! A symbol `{f, g}` of theta products has its tame symbols checked on `E`,
//! then each entry is truncated to a finite product of binomials and the
//! result is evaluated as a finite sum of tame symbols on `P¹`.

mod identities;
mod rational;
mod symbol;

pub use identities::{
    build_xi_l, compare_mod_powers, formula_table, lemma_f0_check, lemma_f0_rhs, lemma_f0_symbol, lemma_f1_check,
    o_k, prop_sa_check, prop_sa_rhs, theta_polynomial, FormulaEntry, IdentityCheck, LemmaF1, LemmaF1Report,
};
pub use rational::{joint_places, tame_symbol_p1, weil_product, weil_reciprocity_check, Place, RationalFunction, Scalar};
pub use symbol::{factored_to_rational, tau_hat, Membership, MilnorSymbol, SymbolTerm, TameValue, TauValue};

use thiserror::Error;

use crate::laurent::SeriesError;
use crate::padic::PAdicError;
use crate::tate::TateError;

#[derive(Debug, Error)]
pub enum K2Error {
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    PAdic(#[from] PAdicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("symbol entry is not q-periodic")]
    NotPeriodic,
    #[error("symbol has no terms")]
    EmptySymbol,
    #[error("tame symbol at {point} is {value}, not 1")]
    MembershipFailed { point: String, value: String },
    #[error("zero constant in a rational function")]
    ZeroConstant,
    #[error("degenerate evaluation")]
    Degenerate,
    #[error("valuation changed with precision: {low} then {high}")]
    UnstableOrder { low: i64, high: i64 },
}
