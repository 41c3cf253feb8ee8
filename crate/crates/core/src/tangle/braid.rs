use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Statement, TangleError, TangleProgram};
use crate::gamma::{GammaElement, Sign};
use crate::linalg::Matrix;
use crate::polyalg::Label;

/// A braid generator σ_i^{±1} (strands `i` and `i+1`, 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidGen {
    pub index: usize,
    pub sign: Sign,
}

impl BraidGen {
    pub fn new(index: usize, sign: Sign) -> Self {
        BraidGen { index, sign }
    }

    pub fn pos(index: usize) -> Self {
        BraidGen::new(index, Sign::Pos)
    }

    pub fn neg(index: usize) -> Self {
        BraidGen::new(index, Sign::Neg)
    }

    pub fn inverse(self) -> Self {
        BraidGen::new(self.index, self.sign.flip())
    }
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.index),
            Sign::Neg => write!(f, "-{}", self.index),
        }
    }
}

/// Parse a braid word written as signed generator indices, e.g. `"1 -2 1 -2"`.
pub fn parse_braid_word(s: &str) -> Result<Vec<BraidGen>, TangleError> {
    s.split(|c: char| c.is_ascii_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || TangleError::Syntax {
                line: 1,
                col: 1,
                msg: format!("bad braid generator {t:?}"),
            };
            let (sign, digits) = match t.strip_prefix('-') {
                Some(d) => (Sign::Neg, d),
                None => (Sign::Pos, t.strip_prefix('+').unwrap_or(t)),
            };
            let i: usize = digits.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            Ok(BraidGen::new(i, sign))
        })
        .collect()
}

pub fn format_braid_word(word: &[BraidGen]) -> String {
    word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// A braid on `n` strands whose rightmost `closures` strands are closed up
/// one after another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidForm {
    pub n: usize,
    pub word: Vec<BraidGen>,
    pub closures: usize,
}

/// A bijection given as `domain[i] // ρ = image[i]` (right action).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    domain: Vec<Label>,
    image: Vec<Label>,
}

impl Permutation {
    pub fn new(domain: Vec<Label>, image: Vec<Label>) -> Result<Self, TangleError> {
        let a: BTreeSet<&Label> = domain.iter().collect();
        let b: BTreeSet<&Label> = image.iter().collect();
        if a.len() != domain.len() || a != b {
            return Err(TangleError::NotAPermutation);
        }
        Ok(Permutation { domain, image })
    }

    pub fn identity(labels: Vec<Label>) -> Self {
        Permutation {
            image: labels.clone(),
            domain: labels,
        }
    }

    pub fn domain(&self) -> &[Label] {
        &self.domain
    }

    pub fn image(&self) -> &[Label] {
        &self.image
    }

    pub fn apply(&self, l: &Label) -> Option<&Label> {
        self.domain.iter().position(|d| d == l).map(|i| &self.image[i])
    }

    /// `self` then `o`: `a // (self o) = (a // self) // o`.
    pub fn then(&self, o: &Permutation) -> Result<Permutation, TangleError> {
        let image = self
            .image
            .iter()
            .map(|l| o.apply(l).cloned().ok_or(TangleError::NotAPermutation))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(self.domain.clone(), image)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            domain: self.image.clone(),
            image: self.domain.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.image
    }
}

/// An `n`-component string link: a program plus the strand labels read left
/// to right at the bottom and at the top. Strands run bottom to top and each
/// strand carries a single label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringLinkPresentation {
    pub program: TangleProgram,
    pub bottom: Vec<Label>,
    pub top: Vec<Label>,
    /// Set when the link was built from a braid with rightmost closures.
    pub braid: Option<BraidForm>,
}

/// The column-permuted matrix `M^ρ`: rows follow the bottom labels, and
/// column `j` is the column of the strand that ends at top position `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GassnerMatrix {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub matrix: Matrix,
}

fn fresh_label(used: &mut BTreeSet<Label>, next: &mut usize) -> Label {
    loop {
        let l = Label::from(*next);
        *next += 1;
        if used.insert(l.clone()) {
            return l;
        }
    }
}

/// Build the string link of a braid: strands are labeled by their bottom
/// positions `1..n`; each generator adds one crossing on two fresh labels and
/// stitches them onto the strands it acts on.
///
/// σ_i puts the strand at position `i` over the one at `i+1`; σ_i⁻¹ puts the
/// strand at `i+1` over.
pub fn braid_to_program(word: &[BraidGen], n: usize) -> Result<StringLinkPresentation, TangleError> {
    let bottom: Vec<Label> = (1..=n).map(Label::from).collect();
    let mut used: BTreeSet<Label> = bottom.iter().cloned().collect();
    let mut next = n + 1;
    let mut program = TangleProgram::default();
    for l in &bottom {
        program.push(Statement::Identity(l.clone()));
    }
    let mut cur = bottom.clone();
    for g in word {
        if g.index == 0 || g.index >= n {
            return Err(TangleError::IndexOutOfRange { index: g.index, n });
        }
        let (l, r) = (cur[g.index - 1].clone(), cur[g.index].clone());
        let fl = fresh_label(&mut used, &mut next);
        let fr = fresh_label(&mut used, &mut next);
        let (over, under) = match g.sign {
            Sign::Pos => (fl.clone(), fr.clone()),
            Sign::Neg => (fr.clone(), fl.clone()),
        };
        program.push(Statement::Crossing {
            sign: g.sign,
            over,
            under,
        });
        program.push(Statement::Stitch(l.clone(), fl, l.clone()));
        program.push(Statement::Stitch(r.clone(), fr, r.clone()));
        cur.swap(g.index - 1, g.index);
    }
    Ok(StringLinkPresentation {
        program,
        bottom,
        top: cur,
        braid: Some(BraidForm {
            n,
            word: word.to_vec(),
            closures: 0,
        }),
    })
}

impl StringLinkPresentation {
    pub fn identity(n: usize) -> Self {
        braid_to_program(&[], n).expect("empty word is valid")
    }

    /// Braid on `form.n` strands, then `form.closures` rightmost closures.
    pub fn from_braid_form(form: &BraidForm) -> Result<Self, TangleError> {
        let mut s = braid_to_program(&form.word, form.n)?;
        for _ in 0..form.closures {
            s = s.close_rightmost()?;
        }
        s.braid = Some(form.clone());
        Ok(s)
    }

    pub fn components(&self) -> usize {
        self.bottom.len()
    }

    /// The permutation induced by the skeleton: `bottom[i] // ρ = top[i]`.
    pub fn permutation(&self) -> Permutation {
        Permutation {
            domain: self.bottom.clone(),
            image: self.top.clone(),
        }
    }

    pub fn is_pure(&self) -> bool {
        self.bottom == self.top
    }

    pub fn evaluate(&self) -> Result<GammaElement, TangleError> {
        Ok(self.program.evaluate()?.tangle.gamma)
    }

    /// Stack `o` on top of `self`. The labels of `o` are renamed apart and
    /// the top of `self` is stitched to the bottom of `o`.
    pub fn compose(&self, o: &StringLinkPresentation) -> Result<Self, TangleError> {
        if self.components() != o.components() {
            return Err(TangleError::ArityMismatch {
                left: self.components(),
                right: o.components(),
            });
        }
        let mut used = self.program.mentioned_labels();
        used.extend(self.bottom.iter().cloned());
        let mut next = 1;
        let mut rename: BTreeMap<Label, Label> = BTreeMap::new();
        let mut theirs: Vec<Label> = o.program.mentioned_labels().into_iter().collect();
        theirs.extend(o.bottom.iter().cloned());
        for l in theirs {
            if !rename.contains_key(&l) {
                let f = fresh_label(&mut used, &mut next);
                rename.insert(l, f);
            }
        }
        let rn = |l: &Label| rename[l].clone();
        let mut program = self.program.clone();
        for st in &o.program.statements {
            program.push(match st {
                Statement::Crossing { sign, over, under } => Statement::Crossing {
                    sign: *sign,
                    over: rn(over),
                    under: rn(under),
                },
                Statement::Identity(a) => Statement::Identity(rn(a)),
                Statement::Stitch(a, b, c) => Statement::Stitch(rn(a), rn(b), rn(c)),
                Statement::Delete(a) => Statement::Delete(rn(a)),
                Statement::Rename(a, b) => Statement::Rename(rn(a), rn(b)),
                Statement::Reverse(v) => Statement::Reverse(v.iter().map(rn).collect()),
                Statement::Trace(_) => return Err(TangleError::NotAStringLink),
            });
        }
        for (t1, b2) in self.top.iter().zip(&o.bottom) {
            program.push(Statement::Stitch(t1.clone(), rn(b2), t1.clone()));
        }
        let top = o
            .top
            .iter()
            .map(|l| {
                let p = o.bottom.iter().position(|b| b == l).expect("top permutes bottom");
                self.top[p].clone()
            })
            .collect();
        let braid = match (&self.braid, &o.braid) {
            (Some(a), Some(b)) if a.closures == 0 && b.closures == 0 && a.n == b.n => {
                Some(BraidForm {
                    n: a.n,
                    word: a.word.iter().chain(&b.word).copied().collect(),
                    closures: 0,
                })
            }
            _ => None,
        };
        Ok(StringLinkPresentation {
            program,
            bottom: self.bottom.clone(),
            top,
            braid,
        })
    }

    /// Join the rightmost top endpoint to the rightmost bottom endpoint,
    /// leaving an (n−1)-component string link.
    pub fn close_rightmost(&self) -> Result<Self, TangleError> {
        let (Some(t), Some(b)) = (self.top.last(), self.bottom.last()) else {
            return Err(TangleError::ArityMismatch { left: 0, right: 1 });
        };
        if t == b {
            return Err(TangleError::ClosedLoop(t.clone()));
        }
        let (t, b) = (t.clone(), b.clone());
        let mut program = self.program.clone();
        program.push(Statement::Stitch(t.clone(), b.clone(), t.clone()));
        let bottom = self.bottom[..self.bottom.len() - 1].to_vec();
        let top = self.top[..self.top.len() - 1]
            .iter()
            .map(|l| if *l == b { t.clone() } else { l.clone() })
            .collect();
        let braid = self.braid.as_ref().map(|f| BraidForm {
            closures: f.closures + 1,
            ..f.clone()
        });
        Ok(StringLinkPresentation {
            program,
            bottom,
            top,
            braid,
        })
    }

    /// `M^ρ` of the evaluated link, together with its scalar part.
    pub fn gassner(&self) -> Result<(GammaElement, GassnerMatrix), TangleError> {
        let g = self.evaluate()?;
        let rows = self
            .bottom
            .iter()
            .map(|l| g.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        let cols = self
            .top
            .iter()
            .map(|l| g.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = g.matrix().select(&rows, &cols);
        Ok((
            g,
            GassnerMatrix {
                rows: self.bottom.clone(),
                cols: self.top.clone(),
                matrix,
            },
        ))
    }

    pub fn gassner_matrix(&self) -> Result<GassnerMatrix, TangleError> {
        Ok(self.gassner()?.1)
    }
}
