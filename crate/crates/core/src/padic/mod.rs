//! Arithmetic in finite extensions `K/Q_p`.

mod element;
mod field;
mod hilbert;
mod poly_fp;
mod roots;

pub use element::{field_arith, ArithOp, PAdicElement, INFINITE};
pub use field::FieldSpec;
pub use hilbert::{
    congruent_mod_powers, hilbert_symbol_tame, p_power_test, torsion_of_k1, PowerTest, TorsionShape,
};
pub use roots::{integral_roots, residue_elements, root_order, roots_of_unity, teichmuller_generator, RootsOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PAdicError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse field description: {0}")]
    Parse(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("valuation of exact zero")]
    ZeroValuation,
    #[error("precision exhausted (value known only modulo π^{available})")]
    PrecisionExhausted { available: i64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("wild Hilbert symbol unsupported: n = {n}, residue field size {residue_size}")]
    WildSymbol { n: u64, residue_size: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
