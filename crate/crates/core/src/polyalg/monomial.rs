use std::cmp::Ordering;
use std::fmt;

use super::Label;

/// A Laurent monomial `∏ t_l^{e_l}`; the stored list is sorted by label and
/// never holds a zero exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Label, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(label: Label) -> Self {
        Monomial(vec![(label, 1)])
    }

    pub fn var_pow(label: Label, exp: i64) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(label, exp)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Label, i64)>>(pairs: I) -> Self {
        let mut v: Vec<(Label, i64)> = pairs.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Label, i64)> = Vec::with_capacity(v.len());
        for (l, e) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == l => *acc += e,
                _ => out.push((l, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Label, i64)] {
        &self.0
    }

    pub fn exponent(&self, label: &Label) -> i64 {
        self.0
            .binary_search_by(|(l, _)| l.cmp(label))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.0.iter().map(|(l, _)| l)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(l, e)| (l.clone(), -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(l, e)| (l.clone(), e * k)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Componentwise minimum of exponents (the gcd when both are polynomials).
    pub fn min_with(&self, other: &Monomial) -> Monomial {
        let mut labels: Vec<&Label> = self.labels().chain(other.labels()).collect();
        labels.sort();
        labels.dedup();
        Monomial::from_pairs(
            labels
                .into_iter()
                .map(|l| (l.clone(), self.exponent(l).min(other.exponent(l)))),
        )
    }

    /// Degree as a sum of exponents.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

/// Lexicographic order: the exponent of the smallest label decides first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((la, ea)), Some((lb, eb))) => match la.cmp(lb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (l, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            // The single-variable names t and s print bare.
            match l.as_str() {
                "t" | "s" => f.write_str(l.as_str())?,
                _ => write!(f, "t_{l}")?,
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, i64)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(l, e)| (Label::from(l), e)))
    }

    #[test]
    fn lex_order() {
        assert!(m(&[]) < m(&[(1, 1)]));
        assert!(m(&[(1, -1)]) < m(&[]));
        assert!(m(&[(2, 5)]) < m(&[(1, 1)]));
        assert!(m(&[(1, 1), (2, -3)]) < m(&[(1, 1)]));
    }

    #[test]
    fn mul_cancels() {
        let a = m(&[(1, 2), (3, -1)]);
        let b = m(&[(1, -2), (2, 1)]);
        assert_eq!(a.mul(&b), m(&[(2, 1), (3, -1)]));
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn ordering_is_multiplicative() {
        let a = m(&[(1, 1), (2, -2)]);
        let b = m(&[(2, 3)]);
        let c = m(&[(1, -4), (3, 2)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }
}
