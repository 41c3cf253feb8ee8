use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Label, Monomial, Substitution};

/// Exact multivariate Laurent polynomial over ℚ. Zero coefficients are never
/// stored; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(label: Label) -> Self {
        LaurentPoly::term(Monomial::var(label), BigRational::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// `(P, d)` with `self = P / d` and `P` integral.
    fn integral(&self) -> (Vec<(&Monomial, BigInt)>, BigInt) {
        let mut d = BigInt::one();
        for c in self.terms.values() {
            if !c.denom().is_one() {
                d = num_integer::Integer::lcm(&d, c.denom());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let n = if c.denom().is_one() { c.numer() * &d } else { c.numer() * (&d / c.denom()) };
                (m, n)
            })
            .collect();
        (terms, d)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Exact quotient in the Laurent ring, if `other` divides `self`.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        super::gcd::divide(self, other)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The single term, if this is a nonzero multiple of a monomial.
    pub fn as_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_term() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn least_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.terms
            .keys()
            .flat_map(|m| m.labels().cloned())
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplication by a monomial just shifts exponents.
    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn substitute(&self, sub: &Substitution) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (sub.apply_monomial(m), c.clone())),
        )
    }

    /// Replace every `t_i` by `t_i⁻¹`.
    pub fn conjugate(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect(),
        }
    }

    /// Value with every variable set to 1.
    pub fn eval_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // Work over ℤ with one common denominator per factor.
        let (a, da) = self.integral();
        let (b, db) = rhs.integral();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len());
        for (m1, c1) in &a {
            for (m2, c2) in &b {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        let d = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, BigRational::new(c, d.clone())))
            .collect();
        LaurentPoly { terms }
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn render_order_and_signs() {
        let p = parse_poly("t_1^2 - t_1 + 1").unwrap();
        assert_eq!(p.to_string(), "1 - t_1 + t_1^2");
        let q = parse_poly("-1/2*t_2*t_1^-1 + 3").unwrap();
        assert_eq!(q.to_string(), "-1/2*t_1^-1*t_2 + 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = parse_poly("1 - t_a").unwrap();
        let b = parse_poly("1 + t_a").unwrap();
        assert_eq!(&a * &b, parse_poly("1 - t_a^2").unwrap());
        assert!((&(&a + &b) - &LaurentPoly::from_int(2)).is_zero());
        assert!((&a + &(-&a)).is_zero());
    }
}
