//! Burau and colored Burau representations computed straight from the
//! generator matrices, independent of the Γ-calculus.

use crate::gamma::Sign;
use crate::linalg::Matrix;
use crate::polyalg::{Label, RationalFn};
use crate::tangle::{BraidGen, TangleError};

fn block(g: BraidGen, n: usize, left: &Label, right: &Label) -> Matrix {
    let i = g.index - 1;
    let mut m = Matrix::identity(n);
    let one = RationalFn::one();
    let (a, b, c, d) = match g.sign {
        Sign::Pos => {
            let t = RationalFn::var(left.clone());
            (one.sub(&t), one.clone(), t, RationalFn::zero())
        }
        Sign::Neg => {
            let ti = RationalFn::var(right.clone()).inv().expect("variable is nonzero");
            (RationalFn::zero(), ti.clone(), one.clone(), one.sub(&ti))
        }
    };
    m.set(i, i, a);
    m.set(i, i + 1, b);
    m.set(i + 1, i, c);
    m.set(i + 1, i + 1, d);
    m
}

fn product(
    word: &[BraidGen],
    n: usize,
    color: impl Fn(&Label) -> Label,
) -> Result<Matrix, TangleError> {
    let mut at: Vec<Label> = (1..=n).map(Label::from).collect();
    let mut m = Matrix::identity(n);
    for g in word {
        if g.index == 0 || g.index >= n {
            return Err(TangleError::IndexOutOfRange { index: g.index, n });
        }
        let i = g.index - 1;
        m = m.mul(&block(*g, n, &color(&at[i]), &color(&at[i + 1])));
        at.swap(i, i + 1);
    }
    Ok(m)
}

/// Colored Burau matrix: each crossing uses the variable of the strand
/// (named by its bottom position) that passes over.
pub fn colored_burau_matrix(word: &[BraidGen], n: usize) -> Result<Matrix, TangleError> {
    product(word, n, |l| l.clone())
}

/// Burau matrix with every strand carrying the single variable `t`.
pub fn burau_matrix(word: &[BraidGen], n: usize, t: &Label) -> Result<Matrix, TangleError> {
    product(word, n, |_| t.clone())
}
