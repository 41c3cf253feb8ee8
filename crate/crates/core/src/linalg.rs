//! Dense matrices over ℚ(t_i).

use std::fmt;

use crate::polyalg::{LaurentPoly, PolyError, RationalFn, Substitution};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFn>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RationalFn::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFn::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalFn) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFn {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFn) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFn] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RationalFn] {
        &self.data
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| x.neg())
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = RationalFn::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn scale(&self, c: &RationalFn) -> Matrix {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&RationalFn) -> RationalFn) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&RationalFn) -> Result<RationalFn, PolyError>,
    ) -> Result<Matrix, PolyError> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Matrix, PolyError> {
        self.try_map(|x| x.substitute(sub))
    }

    pub fn conjugate(&self) -> Matrix {
        self.map(|x| x.conjugate())
    }

    /// Conjugate transpose: transpose with every `t_i → t_i⁻¹`.
    pub fn star(&self) -> Matrix {
        self.transpose().conjugate()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    /// Clear denominators row by row: `self = diag(d)⁻¹ · P` with `P` Laurent.
    /// Each `d` is returned as its list of distinct entry denominators.
    fn cleared(&self) -> (Vec<Vec<LaurentPoly>>, Vec<Vec<LaurentPoly>>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut factors: Vec<LaurentPoly> = Vec::new();
            for e in self.row(i) {
                if !e.is_laurent() && !factors.contains(e.den()) {
                    factors.push(e.den().clone());
                }
            }
            let d = product(&factors);
            let row = self
                .row(i)
                .iter()
                .map(|e| {
                    if e.is_laurent() {
                        e.num() * &d
                    } else {
                        let rest: Vec<LaurentPoly> =
                            factors.iter().filter(|f| *f != e.den()).cloned().collect();
                        &product(&rest) * e.num()
                    }
                })
                .collect();
            rows.push(row);
            scales.push(factors);
        }
        (rows, scales)
    }

    /// Fraction-free Gauss-Jordan on `[a | b]`. Afterwards the left block is
    /// `D·I` and `E·a = D·I`, where `E` is what the right block became when
    /// it started as the identity. Returns `D` and the number of row swaps,
    /// or `None` when `a` is singular.
    fn bareiss_jordan(a: &mut [Vec<LaurentPoly>], b: &mut [Vec<LaurentPoly>]) -> Option<(LaurentPoly, usize)> {
        let n = a.len();
        let mut prev = LaurentPoly::one();
        let mut swaps = 0;
        for k in 0..n {
            let r = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len())?;
            if r != k {
                a.swap(k, r);
                b.swap(k, r);
                swaps += 1;
            }
            let p = a[k][k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i][k].clone();
                let step = |x: &LaurentPoly, y: &LaurentPoly| -> LaurentPoly {
                    let v = &(&p * x) - &(&f * y);
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
                for j in 0..n {
                    if j != k {
                        a[i][j] = step(&a[i][j], &a[k][j]);
                    }
                }
                for j in 0..b[i].len() {
                    b[i][j] = step(&b[i][j], &b[k][j]);
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = p;
        }
        Some((prev, swaps))
    }

    pub fn det(&self) -> RationalFn {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => return RationalFn::one(),
            1 => return self.get(0, 0).clone(),
            _ => {}
        }
        let (mut a, scales) = self.cleared();
        let mut b = vec![Vec::new(); n];
        let Some((d, swaps)) = Self::bareiss_jordan(&mut a, &mut b) else {
            return RationalFn::zero();
        };
        let d = if swaps % 2 == 1 { -&d } else { d };
        let factors: Vec<LaurentPoly> = scales.into_iter().flatten().collect();
        over(d, factors)
    }

    /// Inverse by fraction-free elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let (mut a, scales) = self.cleared();
        let mut b: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
            .collect();
        let (d, _) = Self::bareiss_jordan(&mut a, &mut b)?;
        // self⁻¹ = P⁻¹·diag(scales) and P⁻¹ = b / d. Cancel each column's
        // scale factors against d by exact division where they divide it.
        let mut col_den = Vec::with_capacity(n);
        for factors in &scales {
            let mut den = d.clone();
            let mut num = LaurentPoly::one();
            for f in factors {
                match den.div_exact(f) {
                    Some(q) => den = q,
                    None => num = &num * f,
                }
            }
            col_den.push((num, den));
        }
        let data = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let (num, den) = &col_den[j];
                RationalFn::new(&b[i][j] * num, den.clone()).expect("nonzero pivot")
            })
            .collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    /// Solve `self · X = rhs`; `None` when `self` is singular.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        Some(self.inverse()?.mul(rhs))
    }
}

fn product(factors: &[LaurentPoly]) -> LaurentPoly {
    factors.iter().fold(LaurentPoly::one(), |acc, x| &acc * x)
}

/// `num / ∏factors`, removing whole factors by exact division before
/// falling back on a gcd.
fn over(mut num: LaurentPoly, factors: Vec<LaurentPoly>) -> RationalFn {
    let mut rest = Vec::new();
    for f in factors {
        match num.div_exact(&f) {
            Some(q) => num = q,
            None => rest.push(f),
        }
    }
    RationalFn::new(num, product(&rest)).expect("denominator factors are nonzero")
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_rational;

    fn mat(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s).unwrap()).collect())
                .collect(),
        )
    }

    /// Cofactor expansion along the first row.
    fn det_oracle(m: &Matrix) -> RationalFn {
        let n = m.rows();
        if n == 0 {
            return RationalFn::one();
        }
        let mut acc = RationalFn::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = m.get(0, j).mul(&det_oracle(&m.select(&rows, &cols)));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = mat(&[
            &["0", "1 - t_1", "t_2"],
            &["t_1", "0", "1/(1 + t_3)"],
            &["2", "t_2^-1", "1 - t_3"],
        ]);
        assert_eq!(m.det(), det_oracle(&m));
        let s = mat(&[&["t_1", "1"], &["t_1^2", "t_1"]]);
        assert!(s.det().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[
            &["1", "1 - t_1", "0"],
            &["0", "t_1", "1/(t_2 + 1)"],
            &["t_3", "0", "1"],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert!(mat(&[&["1", "t_1"], &["1", "t_1"]]).inverse().is_none());
    }
}
