//! Tangle programs: the line-oriented DSL, its evaluator, braids and string
//! links, and the up-down tangles used for ribbon certificates.

mod braid;
mod eval;
mod program;
mod updown;

pub use braid::{
    braid_to_program, format_braid_word, parse_braid_word, BraidForm, BraidGen, GassnerMatrix,
    Permutation, StringLinkPresentation,
};
pub use eval::{Evaluation, StitchMode};
pub use program::{Statement, TangleProgram};
pub use updown::{double, UpDownTangle};

use thiserror::Error;

use crate::gamma::GammaError;
use crate::polyalg::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown label {label}")]
    UnknownLabelReference { line: usize, col: usize, label: Label },
    #[error("line {line}, column {col}: cannot stitch strand {label} to itself")]
    SelfStitch { line: usize, col: usize, label: Label },
    #[error("line {line}, column {col}: label {label} is already in use")]
    DuplicateLabel { line: usize, col: usize, label: Label },
    #[error("braid generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("component counts differ: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("closing strand {0} would make a closed loop")]
    ClosedLoop(Label),
    #[error("program is not a string link")]
    NotAStringLink,
    #[error("not a permutation")]
    NotAPermutation,
    #[error("not an up-down tangle: {0}")]
    NotUpDown(String),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}
