use thiserror::Error;

use crate::polyalg::{Label, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("a crossing needs two distinct strands, got {0} twice")]
    EqualLabels(Label),
    #[error("label {0} is already in use")]
    DuplicateLabel(Label),
    #[error("label {0} occurs in both operands of a disjoint union")]
    LabelCollision(Label),
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("cannot stitch strand {0} to itself")]
    SelfStitch(Label),
    #[error("stitching divides by zero (1 - γ vanishes identically); input is not a valid element")]
    SingularStitch,
    #[error("invalid stitch specification: {0}")]
    SpecMismatch(String),
    #[error("orientation reversal needs an invertible block; det vanishes identically")]
    SingularReversal,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
