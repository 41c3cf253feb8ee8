use std::collections::{BTreeMap, BTreeSet};

use super::GammaError;
use crate::polyalg::Label;

/// A batch of stitches `m^{a_i,b_i}_{c_i}`, all referring to the labels of
/// the element *before* any of them is applied.
///
/// Stitch `i` joins the head of strand `a_i` to the tail of strand `b_i`.
/// Strands joined into one chain take the name `c_i` of the last stitch (in
/// list order) that touches the chain, which is the name the chain would end
/// up with if the stitches were performed one by one in list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StitchSpec {
    pub a: Vec<Label>,
    pub b: Vec<Label>,
    pub c: Vec<Label>,
}

/// One strand produced by a batch of stitches.
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    /// Original labels in order along the strand, tail to head.
    pub members: Vec<Label>,
    pub name: Label,
}

impl Chain {
    /// Surviving row: the first piece's `y`.
    pub fn row(&self) -> &Label {
        &self.members[0]
    }

    /// Surviving column: the last piece's `x`.
    pub fn col(&self) -> &Label {
        self.members.last().expect("nonempty chain")
    }
}

impl StitchSpec {
    pub fn new(a: Vec<Label>, b: Vec<Label>, c: Vec<Label>) -> Result<Self, GammaError> {
        if a.len() != b.len() || a.len() != c.len() {
            return Err(GammaError::SpecMismatch(format!(
                "lengths differ: {} heads, {} tails, {} names",
                a.len(),
                b.len(),
                c.len()
            )));
        }
        for (x, y) in a.iter().zip(&b) {
            if x == y {
                return Err(GammaError::SelfStitch(x.clone()));
            }
        }
        if let Some(d) = first_duplicate(&a) {
            return Err(GammaError::SpecMismatch(format!("head {d} stitched twice")));
        }
        if let Some(d) = first_duplicate(&b) {
            return Err(GammaError::SpecMismatch(format!("tail {d} stitched twice")));
        }
        Ok(StitchSpec { a, b, c })
    }

    pub fn single(a: Label, b: Label, c: Label) -> Result<Self, GammaError> {
        StitchSpec::new(vec![a], vec![b], vec![c])
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Translate a word of sequential stitches `(x, y, z)` = `m^{x,y}_z`,
    /// each written in the labels current at its step, into a batch on the
    /// original labels `labels`.
    pub fn from_sequence(
        labels: &[Label],
        seq: &[(Label, Label, Label)],
    ) -> Result<Self, GammaError> {
        // current label -> (first original piece, last original piece)
        let mut live: BTreeMap<Label, (Label, Label)> =
            labels.iter().map(|l| (l.clone(), (l.clone(), l.clone()))).collect();
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for (x, y, z) in seq {
            if x == y {
                return Err(GammaError::SelfStitch(x.clone()));
            }
            let (fx, lx) = live
                .remove(x)
                .ok_or_else(|| GammaError::UnknownLabel(x.clone()))?;
            let (fy, ly) = live
                .remove(y)
                .ok_or_else(|| GammaError::UnknownLabel(y.clone()))?;
            if live.contains_key(z) {
                return Err(GammaError::DuplicateLabel(z.clone()));
            }
            a.push(lx);
            b.push(fy);
            c.push(z.clone());
            live.insert(z.clone(), (fx, ly));
        }
        StitchSpec::new(a, b, c)
    }

    /// Group the stitched labels of an element with label set `labels` into
    /// chains and name them.
    pub(crate) fn resolve(&self, labels: &[Label]) -> Result<Vec<Chain>, GammaError> {
        let present: BTreeSet<&Label> = labels.iter().collect();
        for l in self.a.iter().chain(&self.b) {
            if !present.contains(l) {
                return Err(GammaError::UnknownLabel(l.clone()));
            }
        }
        let next: BTreeMap<&Label, (&Label, usize)> = self
            .a
            .iter()
            .zip(&self.b)
            .enumerate()
            .map(|(i, (x, y))| (x, (y, i)))
            .collect();
        let tails: BTreeSet<&Label> = self.b.iter().collect();
        let mut chains = Vec::new();
        let mut visited = 0usize;
        for start in &self.a {
            if tails.contains(start) {
                continue;
            }
            let mut members = vec![start.clone()];
            let mut last_stitch = 0;
            let mut cur = start;
            while let Some(&(nx, i)) = next.get(cur) {
                members.push(nx.clone());
                last_stitch = last_stitch.max(i);
                visited += 1;
                cur = nx;
            }
            chains.push(Chain {
                members,
                name: self.c[last_stitch].clone(),
            });
        }
        if visited != self.len() {
            return Err(GammaError::SpecMismatch(
                "stitches close a loop; use trace for closed components".into(),
            ));
        }
        let consumed: BTreeSet<&Label> = self.a.iter().chain(&self.b).collect();
        let mut taken: BTreeSet<&Label> = labels.iter().filter(|l| !consumed.contains(l)).collect();
        for ch in &chains {
            if !taken.insert(&ch.name) {
                return Err(GammaError::DuplicateLabel(ch.name.clone()));
            }
        }
        Ok(chains)
    }
}

fn first_duplicate(v: &[Label]) -> Option<&Label> {
    let mut seen = BTreeSet::new();
    v.iter().find(|l| !seen.insert(*l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(v: &[usize]) -> Vec<Label> {
        v.iter().map(|&n| Label::from(n)).collect()
    }

    #[test]
    fn sequence_translation() {
        let seq = vec![
            (Label::from(1usize), Label::from(2usize), Label::from(1usize)),
            (Label::from(1usize), Label::from(3usize), Label::from(1usize)),
        ];
        let s = StitchSpec::from_sequence(&ls(&[1, 2, 3]), &seq).unwrap();
        assert_eq!(s.a, ls(&[1, 2]));
        assert_eq!(s.b, ls(&[2, 3]));
        assert_eq!(s.c, ls(&[1, 1]));
        let ch = s.resolve(&ls(&[1, 2, 3, 4])).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].members, ls(&[1, 2, 3]));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            StitchSpec::new(ls(&[1]), ls(&[1]), ls(&[1])),
            Err(GammaError::SelfStitch(_))
        ));
        let loop_spec = StitchSpec::new(ls(&[1, 2]), ls(&[2, 1]), ls(&[1, 1])).unwrap();
        assert!(matches!(
            loop_spec.resolve(&ls(&[1, 2])),
            Err(GammaError::SpecMismatch(_))
        ));
        let clash = StitchSpec::single(Label::from(1usize), Label::from(2usize), Label::from(3usize)).unwrap();
        assert!(matches!(
            clash.resolve(&ls(&[1, 2, 3])),
            Err(GammaError::DuplicateLabel(_))
        ));
    }
}
