use std::collections::BTreeMap;

use super::{Chain, GammaError, SigmaElement, StitchSpec};
use crate::linalg::Matrix;
use crate::polyalg::{Label, LaurentPoly, Monomial, RationalFn, Substitution, Target};

/// Crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// An element of Γ^X: a scalar ω and a square matrix whose rows `y_i` and
/// columns `x_j` are indexed by the same label set.
///
/// Labels are kept in natural order, so structural equality is equality of
/// elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaElement {
    labels: Vec<Label>,
    omega: RationalFn,
    matrix: Matrix,
}

impl Default for GammaElement {
    fn default() -> Self {
        GammaElement::empty()
    }
}

impl GammaElement {
    /// The unit of disjoint union: no strands, ω = 1.
    pub fn empty() -> Self {
        GammaElement {
            labels: Vec::new(),
            omega: RationalFn::one(),
            matrix: Matrix::zeros(0, 0),
        }
    }

    /// Build from parts; rows and columns of `matrix` follow `labels`, in any
    /// order (they are sorted here).
    pub fn new(labels: Vec<Label>, omega: RationalFn, matrix: Matrix) -> Result<Self, GammaError> {
        if matrix.rows() != labels.len() || matrix.cols() != labels.len() {
            return Err(GammaError::SpecMismatch(format!(
                "{} labels but a {}x{} matrix",
                labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut idx: Vec<usize> = (0..labels.len()).collect();
        idx.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
        for w in idx.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(GammaError::DuplicateLabel(labels[w[0]].clone()));
            }
        }
        Ok(GammaElement {
            labels: idx.iter().map(|&i| labels[i].clone()).collect(),
            omega,
            matrix: matrix.select(&idx, &idx),
        })
    }

    /// The image of the crossing R^±_{over,under}.
    pub fn generator(sign: Sign, over: &Label, under: &Label) -> Result<Self, GammaError> {
        if over == under {
            return Err(GammaError::EqualLabels(over.clone()));
        }
        let t = RationalFn::monomial(Monomial::var_pow(over.clone(), sign.exponent()));
        let m = Matrix::from_rows(vec![
            vec![RationalFn::one(), RationalFn::one().sub(&t)],
            vec![RationalFn::zero(), t],
        ]);
        GammaElement::new(vec![over.clone(), under.clone()], RationalFn::one(), m)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn omega(&self) -> &RationalFn {
        &self.omega
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, l: &Label) -> Result<usize, GammaError> {
        self.labels
            .binary_search(l)
            .map_err(|_| GammaError::UnknownLabel(l.clone()))
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.labels.binary_search(l).is_ok()
    }

    /// Entry in row `y_row`, column `x_col`.
    pub fn entry(&self, row: &Label, col: &Label) -> Result<&RationalFn, GammaError> {
        Ok(self.matrix.get(self.index_of(row)?, self.index_of(col)?))
    }

    fn indices(&self, ls: &[Label]) -> Result<Vec<usize>, GammaError> {
        ls.iter().map(|l| self.index_of(l)).collect()
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<GammaElement, GammaError> {
        Ok(GammaElement {
            labels: self.labels.clone(),
            omega: self.omega.substitute(sub)?,
            matrix: self.matrix.substitute(sub)?,
        })
    }

    /// Append a new strand `x` carrying the identity.
    pub fn identity_strand(&self, x: &Label) -> Result<GammaElement, GammaError> {
        if self.contains(x) {
            return Err(GammaError::DuplicateLabel(x.clone()));
        }
        let e = GammaElement {
            labels: vec![x.clone()],
            omega: RationalFn::one(),
            matrix: Matrix::identity(1),
        };
        self.disjoint_union(&e)
    }

    /// Block-diagonal union; ω multiplies.
    pub fn disjoint_union(&self, o: &GammaElement) -> Result<GammaElement, GammaError> {
        if let Some(l) = o.labels.iter().find(|l| self.contains(l)) {
            return Err(GammaError::LabelCollision(l.clone()));
        }
        let n1 = self.len();
        let labels: Vec<Label> = self.labels.iter().chain(&o.labels).cloned().collect();
        let m = Matrix::from_fn(labels.len(), labels.len(), |i, j| {
            match (i < n1, j < n1) {
                (true, true) => self.matrix.get(i, j).clone(),
                (false, false) => o.matrix.get(i - n1, j - n1).clone(),
                _ => RationalFn::zero(),
            }
        });
        GammaElement::new(labels, self.omega.mul(&o.omega), m)
    }

    /// Remove strand `x`, then set `t_x = 1` everywhere.
    pub fn delete(&self, x: &Label) -> Result<GammaElement, GammaError> {
        let k = self.index_of(x)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != k).collect();
        let sub = Substitution::new().one(x.clone());
        Ok(GammaElement {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            omega: self.omega.substitute(&sub)?,
            matrix: self.matrix.select(&keep, &keep).substitute(&sub)?,
        })
    }

    /// Rename strand `x` to `w`, with `t_x → t_w`.
    pub fn rename(&self, x: &Label, w: &Label) -> Result<GammaElement, GammaError> {
        self.index_of(x)?;
        if x == w {
            return Ok(self.clone());
        }
        if self.contains(w) {
            return Err(GammaError::DuplicateLabel(w.clone()));
        }
        let sub = Substitution::new().rename(x.clone(), w.clone());
        let labels = self
            .labels
            .iter()
            .map(|l| if l == x { w.clone() } else { l.clone() })
            .collect();
        GammaElement::new(labels, self.omega.substitute(&sub)?, self.matrix.substitute(&sub)?)
    }

    /// Stitch the head of `a` to the tail of `b`, naming the result `c`.
    pub fn stitch(&self, a: &Label, b: &Label, c: &Label) -> Result<GammaElement, GammaError> {
        if a == b {
            return Err(GammaError::SelfStitch(a.clone()));
        }
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        if c != a && c != b && self.contains(c) {
            return Err(GammaError::DuplicateLabel(c.clone()));
        }
        let sub = Substitution::new()
            .rename(a.clone(), c.clone())
            .rename(b.clone(), c.clone());
        let merged = GammaElement {
            labels: self.labels.clone(),
            omega: self.omega.substitute(&sub)?,
            matrix: self.matrix.substitute(&sub)?,
        };
        match merged.single_stitch(ia, ib, c, &Substitution::new()) {
            Err(GammaError::SingularStitch) => self.single_stitch(ia, ib, c, &sub),
            r => r,
        }
    }

    fn single_stitch(
        &self,
        ia: usize,
        ib: usize,
        c: &Label,
        sub: &Substitution,
    ) -> Result<GammaElement, GammaError> {
        let m = &self.matrix;
        let one_minus_gamma = RationalFn::one().sub(m.get(ib, ia));
        let inv = one_minus_gamma.inv().map_err(|_| GammaError::SingularStitch)?;
        // Rows: a stands for the new strand, then the rest; columns: b, then the rest.
        let rest: Vec<usize> = (0..self.len()).filter(|&i| i != ia && i != ib).collect();
        let rows: Vec<usize> = std::iter::once(ia).chain(rest.iter().copied()).collect();
        let cols: Vec<usize> = std::iter::once(ib).chain(rest.iter().copied()).collect();
        let phi: Vec<RationalFn> = rows.iter().map(|&r| m.get(r, ia).mul(&inv)).collect();
        let new = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            let (r, c) = (rows[i], cols[j]);
            let eps = m.get(ib, c);
            if phi[i].is_zero() || eps.is_zero() {
                m.get(r, c).clone()
            } else {
                m.get(r, c).add(&phi[i].mul(eps))
            }
        });
        let mut labels: Vec<Label> = vec![c.clone()];
        labels.extend(rest.iter().map(|&i| self.labels[i].clone()));
        GammaElement::new(
            labels,
            self.omega.mul(&one_minus_gamma).substitute(sub)?,
            new.substitute(sub)?,
        )
    }

    /// Perform a batch of stitches at once: ω·det(I−γ) and Ξ + φ(I−γ)⁻¹ε.
    pub fn stitch_bulk(&self, spec: &StitchSpec) -> Result<GammaElement, GammaError> {
        let chains = spec.resolve(&self.labels)?;
        self.stitch_chains(spec, &chains)
    }

    pub(crate) fn stitch_chains(
        &self,
        spec: &StitchSpec,
        chains: &[Chain],
    ) -> Result<GammaElement, GammaError> {
        if spec.is_empty() {
            return Ok(self.clone());
        }
        let mut sub = Substitution::new();
        for ch in chains {
            for l in &ch.members {
                sub.insert(l.clone(), Target::Label(ch.name.clone()));
            }
        }
        // Merging variables commutes with the stitch formula, and doing it
        // first keeps the polynomials small. If the merged determinant
        // vanishes the formula may still be finite, so fall back on
        // substituting afterwards.
        let merged = GammaElement {
            labels: self.labels.clone(),
            omega: self.omega.substitute(&sub)?,
            matrix: self.matrix.substitute(&sub)?,
        };
        match merged.stitch_formula(spec, chains, &Substitution::new()) {
            Err(GammaError::SingularStitch) => self.stitch_formula(spec, chains, &sub),
            r => r,
        }
    }

    fn stitch_formula(
        &self,
        spec: &StitchSpec,
        chains: &[Chain],
        sub: &Substitution,
    ) -> Result<GammaElement, GammaError> {
        let ia = self.indices(&spec.a)?;
        let ib = self.indices(&spec.b)?;
        let m = &self.matrix;
        let i_minus_gamma = Matrix::identity(spec.len()).sub(&m.select(&ib, &ia));
        let det = i_minus_gamma.det();
        if det.is_zero() {
            return Err(GammaError::SingularStitch);
        }
        let inv = i_minus_gamma.inverse().ok_or(GammaError::SingularStitch)?;
        let in_a: Vec<bool> = (0..self.len()).map(|i| ia.contains(&i)).collect();
        let in_b: Vec<bool> = (0..self.len()).map(|i| ib.contains(&i)).collect();
        let rows: Vec<usize> = (0..self.len()).filter(|&i| !in_b[i]).collect();
        let cols: Vec<usize> = (0..self.len()).filter(|&i| !in_a[i]).collect();
        let phi = m.select(&rows, &ia);
        let eps = m.select(&ib, &cols);
        let block = m.select(&rows, &cols).add(&phi.mul(&inv).mul(&eps));

        // Pair each surviving row with its column under a single name.
        let mut name_of_row: BTreeMap<usize, Label> = BTreeMap::new();
        let mut col_of_row: BTreeMap<usize, usize> = BTreeMap::new();
        for ch in chains {
            let r = self.index_of(ch.row())?;
            let c = self.index_of(ch.col())?;
            name_of_row.insert(r, ch.name.clone());
            col_of_row.insert(r, c);
        }
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut labels = Vec::with_capacity(rows.len());
        let mut col_order = Vec::with_capacity(rows.len());
        for &r in &rows {
            let (name, c) = match name_of_row.get(&r) {
                Some(n) => (n.clone(), col_of_row[&r]),
                None => (self.labels[r].clone(), r),
            };
            labels.push(name);
            col_order.push(col_pos[&c]);
        }
        let row_order: Vec<usize> = (0..rows.len()).collect();
        let block = block.select(&row_order, &col_order);
        GammaElement::new(
            labels,
            self.omega.mul(&det).substitute(sub)?,
            block.substitute(sub)?,
        )
    }

    /// Reverse the orientation of `strands`.
    ///
    /// With α the strands×strands block, θ/φ the mixed blocks and Ξ the rest,
    /// the new blocks are α⁻¹, α⁻¹θ, −φα⁻¹, Ξ−φα⁻¹θ; ω gains det(α)/∏σ; then
    /// `t_a → t_a⁻¹` for every reversed strand.
    pub fn reverse_orientation(
        &self,
        sigma: &SigmaElement,
        strands: &[Label],
    ) -> Result<(GammaElement, SigmaElement), GammaError> {
        let mut sorted = strands.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != strands.len() {
            return Err(GammaError::SpecMismatch("a strand is listed twice".into()));
        }
        let ia = self.indices(strands)?;
        let rest: Vec<usize> = (0..self.len()).filter(|i| !ia.contains(i)).collect();
        let m = &self.matrix;
        let alpha = m.select(&ia, &ia);
        let det = alpha.det();
        if det.is_zero() {
            return Err(GammaError::SingularReversal);
        }
        let ainv = alpha.inverse().ok_or(GammaError::SingularReversal)?;
        let theta = m.select(&ia, &rest);
        let phi = m.select(&rest, &ia);
        let xi = m.select(&rest, &rest);
        let phi_ainv = phi.mul(&ainv);
        let blocks = [
            ainv.clone(),
            ainv.mul(&theta),
            phi_ainv.neg(),
            xi.sub(&phi_ainv.mul(&theta)),
        ];
        let k = ia.len();
        let order: Vec<usize> = ia.iter().chain(&rest).copied().collect();
        let new = Matrix::from_fn(self.len(), self.len(), |i, j| match (i < k, j < k) {
            (true, true) => blocks[0].get(i, j).clone(),
            (true, false) => blocks[1].get(i, j - k).clone(),
            (false, true) => blocks[2].get(i - k, j).clone(),
            (false, false) => blocks[3].get(i - k, j - k).clone(),
        });
        let mut sprod = Monomial::one();
        let mut new_sigma = sigma.clone();
        let mut sub = Substitution::new();
        for l in strands {
            let s = sigma
                .get(l)
                .ok_or_else(|| GammaError::UnknownLabel(l.clone()))?
                .clone();
            sprod = sprod.mul(&s);
            new_sigma.insert(l.clone(), s.inv());
            sub.insert(l.clone(), Target::Inverse);
        }
        let omega = self.omega.mul(&det).mul_monomial(&sprod.inv());
        let labels: Vec<Label> = order.iter().map(|&i| self.labels[i].clone()).collect();
        let g = GammaElement::new(labels, omega.substitute(&sub)?, new.substitute(&sub)?)?;
        Ok((g, new_sigma.substitute(&sub)))
    }

    /// Close the strands `closed` into loops: ω·det(I−α), α the closed block.
    pub fn trace(&self, closed: &[Label]) -> Result<RationalFn, GammaError> {
        let idx = self.indices(closed)?;
        let alpha = self.matrix.select(&idx, &idx);
        Ok(self.omega.mul(&Matrix::identity(idx.len()).sub(&alpha).det()))
    }

    /// List of violated membership conditions; empty when valid. With
    /// `tangle_image`, also checks the properties every tangle's image has.
    pub fn validate(&self, tangle_image: bool) -> Vec<String> {
        let mut out = Vec::new();
        match self.omega.eval_one() {
            Err(_) => out.push("ω has a pole at t = 1".to_string()),
            Ok(v) => {
                if tangle_image && v != num_rational::BigRational::from_integer(1.into()) {
                    out.push(format!("ω at t = 1 is {v}, not 1"));
                }
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                let want = if i == j { 1 } else { 0 };
                match self.matrix.get(i, j).eval_one() {
                    Err(_) => out.push(format!(
                        "entry (y_{}, x_{}) has a pole at t = 1",
                        self.labels[i], self.labels[j]
                    )),
                    Ok(v) if v != num_rational::BigRational::from_integer(want.into()) => {
                        out.push(format!(
                            "entry (y_{}, x_{}) at t = 1 is {v}, not {want}",
                            self.labels[i], self.labels[j]
                        ))
                    }
                    _ => {}
                }
            }
        }
        if tangle_image {
            for j in 0..self.len() {
                let s = (0..self.len()).fold(RationalFn::zero(), |acc, i| acc.add(self.matrix.get(i, j)));
                if !s.is_one() {
                    out.push(format!("column x_{} sums to {s}, not 1", self.labels[j]));
                }
            }
            if !self.omega.is_laurent() {
                out.push(format!("ω = {} is not a Laurent polynomial", self.omega));
            }
            for i in 0..self.len() {
                for j in 0..self.len() {
                    let e = self.omega.mul(self.matrix.get(i, j));
                    if !e.is_laurent() {
                        out.push(format!(
                            "ω·(y_{}, x_{}) = {e} is not a Laurent polynomial",
                            self.labels[i], self.labels[j]
                        ));
                    }
                }
            }
        }
        out
    }

    /// ω·M, entrywise.
    pub fn scaled_matrix(&self) -> Matrix {
        self.matrix.scale(&self.omega)
    }

    /// ω with every variable identified to `t_var`.
    pub fn omega_in(&self, var: &Label) -> Result<RationalFn, GammaError> {
        let sub = Substitution::collapse(self.omega.labels().iter(), var);
        Ok(self.omega.substitute(&sub)?)
    }

    /// ω as a Laurent polynomial, if it is one.
    pub fn omega_laurent(&self) -> Option<&LaurentPoly> {
        self.omega.as_laurent()
    }
}

impl std::fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}
