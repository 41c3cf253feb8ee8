use super::{Statement, TangleError, TangleProgram};
use crate::gamma::{StitchSpec, Tangle};
use crate::polyalg::{Label, RationalFn};

/// How runs of consecutive `m` statements are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StitchMode {
    /// One stitch at a time.
    #[default]
    Sequential,
    /// Each maximal run of stitches as a single bulk stitch.
    Bulk,
}

/// Result of running a program: the open tangle, plus the strands that the
/// trailing `tr` statements close.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub tangle: Tangle,
    pub closed: Vec<Label>,
}

impl Evaluation {
    /// Labels that stay open after the traces.
    pub fn open_labels(&self) -> Vec<Label> {
        self.tangle
            .labels()
            .iter()
            .filter(|l| !self.closed.contains(l))
            .cloned()
            .collect()
    }

    /// ω·det(I−α) over the closed strands (just ω when nothing is closed).
    pub fn scalar(&self) -> Result<RationalFn, TangleError> {
        Ok(self.tangle.trace(&self.closed)?)
    }
}

impl TangleProgram {
    pub fn evaluate(&self) -> Result<Evaluation, TangleError> {
        self.evaluate_with(StitchMode::default())
    }

    pub fn evaluate_with(&self, mode: StitchMode) -> Result<Evaluation, TangleError> {
        self.check()?;
        let mut t = Tangle::empty();
        let mut closed = Vec::new();
        let mut pending: Vec<(Label, Label, Label)> = Vec::new();
        let flush = |t: &mut Tangle, pending: &mut Vec<(Label, Label, Label)>| -> Result<(), TangleError> {
            if pending.is_empty() {
                return Ok(());
            }
            let spec = StitchSpec::from_sequence(t.labels(), pending)?;
            *t = t.stitch_bulk(&spec)?;
            pending.clear();
            Ok(())
        };
        for st in &self.statements {
            if let Statement::Stitch(a, b, c) = st {
                match mode {
                    StitchMode::Sequential => t = t.stitch(a, b, c)?,
                    StitchMode::Bulk => pending.push((a.clone(), b.clone(), c.clone())),
                }
                continue;
            }
            flush(&mut t, &mut pending)?;
            t = match st {
                Statement::Crossing { sign, over, under } => {
                    t.disjoint_union(&Tangle::generator(*sign, over, under)?)?
                }
                Statement::Identity(a) => t.identity_strand(a)?,
                Statement::Delete(a) => t.delete(a)?,
                Statement::Rename(a, b) => t.rename(a, b)?,
                Statement::Reverse(v) => t.reverse_orientation(v)?,
                Statement::Trace(v) => {
                    closed.extend(v.iter().cloned());
                    t
                }
                Statement::Stitch(..) => unreachable!(),
            };
        }
        flush(&mut t, &mut pending)?;
        Ok(Evaluation { tangle: t, closed })
    }
}
