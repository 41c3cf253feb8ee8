//! Exact arithmetic over ℚ(t_i): Laurent polynomials keyed by strand labels and
//! canonical rational functions.

mod gcd;
mod label;
mod laurent;
mod monomial;
mod parse;
mod rational;
mod subst;

pub use label::Label;
pub use laurent::LaurentPoly;
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_rational};
pub use rational::RationalFn;
pub use subst::{Substitution, Target};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid label token {0:?}")]
    InvalidLabel(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish")]
    SubstitutionPole,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
