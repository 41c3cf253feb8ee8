//! Γ-calculus: an exact invariant of w-tangles valued in a scalar rational
//! function and a labeled matrix over ℚ(t_i), with the tooling around it for
//! Alexander polynomials, Gassner matrices, unitarity, skein and ribbon checks.

pub mod polyalg;
pub mod gamma;
pub mod linalg;
pub mod tangle;
pub mod invariants;
pub mod verify;
