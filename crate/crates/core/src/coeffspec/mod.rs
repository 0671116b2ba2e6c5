//! Coefficient sequences `(a_m, b_m)`: rule expressions, presets and the
//! explicit-list format.

pub mod expr;
mod preset;
mod seq;

pub use expr::{parse_expr, Binding, Bindings, EvalError, Expr, ParseError};
pub use preset::{preset_coeffs, Preset};
pub use seq::{
    alternating_exponent, bind_params, build_coeff_seq, coeff_seq_from_list, parse_coeff_list, CoeffError,
    CoeffSeq, Coefficients, Rule, Which,
};
