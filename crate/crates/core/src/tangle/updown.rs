use super::{BraidForm, BraidGen, Statement, StringLinkPresentation, TangleError, TangleProgram};
use crate::gamma::{StitchSpec, Tangle};
use crate::polyalg::Label;

/// A pure tangle on strands `1..2n` whose odd strands point up and whose
/// even strands point down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpDownTangle {
    pub program: TangleProgram,
    pub n: usize,
}

fn labels(range: impl Iterator<Item = usize>) -> Vec<Label> {
    range.map(Label::from).collect()
}

impl UpDownTangle {
    pub fn new(program: TangleProgram, n: usize) -> Result<Self, TangleError> {
        let u = UpDownTangle { program, n };
        let t = u.evaluate()?;
        if t.labels() != labels(1..=2 * n).as_slice() {
            return Err(TangleError::NotUpDown(format!(
                "expected strands 1..{}, got {:?}",
                2 * n,
                t.labels()
            )));
        }
        Ok(u)
    }

    /// The trivial up-down tangle: `2n` parallel strands, evens reversed.
    pub fn trivial(n: usize) -> Self {
        let mut program = TangleProgram::default();
        for i in 1..=2 * n {
            program.push(Statement::Identity(Label::from(i)));
        }
        program.push(Statement::Reverse(labels((2..=2 * n).step_by(2))));
        UpDownTangle { program, n }
    }

    pub fn odd(&self) -> Vec<Label> {
        labels((1..=2 * self.n).step_by(2))
    }

    pub fn even(&self) -> Vec<Label> {
        labels((2..=2 * self.n).step_by(2))
    }

    pub fn evaluate(&self) -> Result<Tangle, TangleError> {
        Ok(self.program.evaluate()?.tangle)
    }

    /// Join the head of each odd strand `i` to the tail of `i+1`; the result
    /// keeps the odd labels.
    pub fn tau_closure(&self) -> Result<Tangle, TangleError> {
        let spec = StitchSpec::new(self.odd(), self.even(), self.odd())?;
        Ok(self.evaluate()?.stitch_bulk(&spec)?)
    }

    /// Join the head of each strand `i+1` to the tail of `i`, giving one long
    /// strand labeled 1.
    pub fn kappa_closure(&self) -> Result<Tangle, TangleError> {
        let m = 2 * self.n;
        let spec = StitchSpec::new(
            labels(2..=m),
            labels(1..m),
            vec![Label::from(1usize); m - 1],
        )?;
        Ok(self.evaluate()?.stitch_bulk(&spec)?)
    }
}

/// Replace each strand of a pure braid-with-closures string link by a pair
/// of parallel strands and reverse the right-hand copy of every pair.
///
/// Each crossing σ_i^ε of the braid becomes the four crossings
/// σ_{2i} σ_{2i−1} σ_{2i+1} σ_{2i} (all of sign ε) between the two pairs,
/// and each rightmost closure becomes two nested closures. The doubled
/// strand of bottom position `k` becomes strands `2k−1` (up) and `2k`
/// (down). Capping each pair at the top retracts the doubled strand to the
/// trivial arc, so the τ-closure is trivial.
pub fn double(s: &StringLinkPresentation) -> Result<UpDownTangle, TangleError> {
    let form = s
        .braid
        .as_ref()
        .ok_or_else(|| TangleError::NotUpDown("doubling needs a braid-with-closures presentation".into()))?;
    if !s.is_pure() {
        return Err(TangleError::NotUpDown("doubling needs a pure string link".into()));
    }
    let mut word = Vec::with_capacity(4 * form.word.len());
    for g in &form.word {
        let i = g.index;
        for j in [2 * i, 2 * i - 1, 2 * i + 1, 2 * i] {
            word.push(BraidGen::new(j, g.sign));
        }
    }
    let cable = StringLinkPresentation::from_braid_form(&BraidForm {
        n: 2 * form.n,
        word,
        closures: 2 * form.closures,
    })?;
    let m = s.components();
    debug_assert!(cable.is_pure());
    debug_assert_eq!(cable.bottom, labels(1..=2 * m));
    let mut program = cable.program;
    if m > 0 {
        program.push(Statement::Reverse(labels((2..=2 * m).step_by(2))));
    }
    Ok(UpDownTangle { program, n: m })
}
