use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd;
use super::{Label, LaurentPoly, Monomial, PolyError, Substitution};

/// Element of ℚ(t_i) in canonical form.
///
/// `num / den` with `gcd(num, den)` a unit, `den` an integer polynomial with
/// content 1, lex-least monomial equal to 1 and positive leading coefficient.
/// Rational scalars live in `num`. Under this normalization structural
/// equality is mathematical equality, and the value is a Laurent polynomial
/// exactly when `den == 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFn {
    fn default() -> Self {
        RationalFn::zero()
    }
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFn::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RationalFn::from_poly(LaurentPoly::from_int(n))
    }

    pub fn var(label: Label) -> Self {
        RationalFn::from_poly(LaurentPoly::var(label))
    }

    pub fn monomial(m: Monomial) -> Self {
        RationalFn::from_poly(LaurentPoly::monomial(m))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, canonicalized.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(reduce(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.is_laurent() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn labels(&self) -> std::collections::BTreeSet<Label> {
        let mut s = self.num.labels();
        s.extend(self.den.labels());
        s
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.is_laurent() {
                return RationalFn::from_poly(&self.num + &o.num);
            }
            return reduce(&self.num + &o.num, self.den.clone());
        }
        if o.is_laurent() {
            // Already coprime: (n + p d, d) has the same gcd as (n, d).
            let n = &self.num + &(&o.num * &self.den);
            return RationalFn { num: n, den: self.den.clone() };
        }
        if self.is_laurent() {
            let n = &o.num + &(&self.num * &o.den);
            return RationalFn { num: n, den: o.den.clone() };
        }
        reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        if self.is_zero() || o.is_zero() {
            return RationalFn::zero();
        }
        if self.is_laurent() && o.is_laurent() {
            return RationalFn::from_poly(&self.num * &o.num);
        }
        let (n1, d2) = coprime(&self.num, &o.den);
        let (n2, d1) = coprime(&o.num, &self.den);
        normalize(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Result<RationalFn, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn, PolyError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RationalFn, PolyError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = RationalFn::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> RationalFn {
        if c.is_zero() {
            return RationalFn::zero();
        }
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RationalFn {
        RationalFn {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, sub: &Substitution) -> Result<RationalFn, PolyError> {
        let num = self.num.substitute(sub);
        if self.is_laurent() {
            return Ok(RationalFn::from_poly(num));
        }
        let den = self.den.substitute(sub);
        if den.is_zero() {
            return Err(PolyError::SubstitutionPole);
        }
        if sub.is_injective_on(self.labels().iter()) {
            Ok(normalize(num, den))
        } else {
            Ok(reduce(num, den))
        }
    }

    /// Replace every `t_i` by `t_i⁻¹`.
    pub fn conjugate(&self) -> RationalFn {
        if self.is_laurent() {
            return RationalFn::from_poly(self.num.conjugate());
        }
        normalize(self.num.conjugate(), self.den.conjugate())
    }

    /// Value with all variables set to 1, if defined.
    pub fn eval_one(&self) -> Result<BigRational, PolyError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(PolyError::SubstitutionPole);
        }
        Ok(self.num.eval_one() / d)
    }

    /// Representative of the class of `self` under multiplication by
    /// ±(monomial): the numerator is shifted so its lex-least monomial is 1
    /// and its lex-leading coefficient is made positive.
    pub fn unit_normal(&self) -> RationalFn {
        let Some((m, _)) = self.num.least_term() else {
            return self.clone();
        };
        let mut num = self.num.mul_monomial(&m.inv());
        if num.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = -&num;
        }
        RationalFn { num, den: self.den.clone() }
    }

    /// Equality up to multiplication by ±(monomial in the t_i).
    pub fn doteq(&self, o: &RationalFn) -> bool {
        self.unit_normal() == o.unit_normal()
    }
}

/// Split off the gcd of `a` and `b`.
fn coprime(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if b.as_term().is_some() || a.as_term().is_some() {
        return (a.clone(), b.clone());
    }
    gcd::cancel(a, b)
}

fn reduce(num: LaurentPoly, den: LaurentPoly) -> RationalFn {
    if num.is_zero() {
        return RationalFn::zero();
    }
    if den.as_term().is_some() {
        return normalize(num, den);
    }
    if let Some(q) = gcd::divide(&num, &den) {
        return RationalFn::from_poly(q);
    }
    let (n, d) = gcd::cancel(&num, &den);
    normalize(n, d)
}

/// Fix the unit ambiguity of a coprime pair.
fn normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFn {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RationalFn::zero();
    }
    let (m, lead) = {
        let (m, _) = den.least_term().expect("nonzero denominator");
        let (_, lead) = den.leading_term().expect("nonzero denominator");
        (m.clone(), lead.clone())
    };
    let mut lcm = BigInt::one();
    for (_, c) in den.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in den.terms() {
        content = content.gcd(&(c.numer() * (&lcm / c.denom())));
    }
    let mut s = BigRational::new(lcm, content);
    if lead.is_negative() {
        s = -s;
    }
    let minv = m.inv();
    let den = den.scale(&s).mul_monomial(&minv);
    let num = num.scale(&s).mul_monomial(&minv);
    RationalFn { num, den }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_rational as r;

    fn l(s: &str) -> Label {
        Label::new(s).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert!(r("1 - t_a").unwrap().add(&r("t_a").unwrap()).is_one());
        assert_eq!(
            r("1 - t_a").unwrap().mul(&r("1 + t_a").unwrap()),
            r("1 - t_a^2").unwrap()
        );
        let q = r("t_a^2 - 1").unwrap().div(&r("t_a - 1").unwrap()).unwrap();
        assert_eq!(q, r("t_a + 1").unwrap());
        assert!(q.is_laurent());
        assert!(matches!(
            r("1").unwrap().div(&RationalFn::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = r("(2*t_1 - 2)/(4*t_1^2 - 4)").unwrap();
        let b = r("1/(2*t_1 + 2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1/2)/(1 + t_1)");
        let c = r("t_2/(t_1*t_2 - t_2)").unwrap();
        assert_eq!(c.to_string(), "(1)/(-1 + t_1)");
        // negative leading coefficient gets flipped into the numerator
        let d = r("1/(1 - t_1)").unwrap();
        assert_eq!(d.to_string(), "(-1)/(-1 + t_1)");
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::new().rename(l("a"), l("c")).rename(l("b"), l("c"));
        assert!(r("t_a*t_b^-1").unwrap().substitute(&s).unwrap().is_one());
        let s = Substitution::new().one(l("a"));
        assert!(r("1 - t_a").unwrap().substitute(&s).unwrap().is_zero());
        let s = Substitution::new().inverse(l("a"));
        assert_eq!(
            r("(1 - t_a)/t_b").unwrap().substitute(&s).unwrap(),
            r("(1 - t_a^-1)/t_b").unwrap()
        );
        let swap = Substitution::new().rename(l("a"), l("b")).rename(l("b"), l("a"));
        assert_eq!(
            r("t_a/(1 + t_b)").unwrap().substitute(&swap).unwrap(),
            r("t_b/(1 + t_a)").unwrap()
        );
        let s = Substitution::new().one(l("a"));
        assert!(matches!(
            r("1/(1 - t_a)").unwrap().substitute(&s),
            Err(PolyError::SubstitutionPole)
        ));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(r("1 - t").unwrap().conjugate(), r("1 - t^-1").unwrap());
        let tref = r("1 - t + t^2").unwrap();
        assert_eq!(tref.conjugate(), r("1 - t^-1 + t^-2").unwrap());
        assert!(tref.conjugate().doteq(&tref));
        let f = r("(1 + 2*t_1)/(3 - t_2*t_1)").unwrap();
        assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn doteq_examples() {
        let tref = r("1 - t + t^2").unwrap();
        assert!(r("-t^3*(1 - t + t^2)").unwrap().doteq(&tref));
        assert!(!r("1 - t").unwrap().doteq(&r("1 + t").unwrap()));
        assert!(r("t^-2 - 5*t^-1 + 9 - 5*t + t^2")
            .unwrap()
            .doteq(&r("t^4 - 5*t^3 + 9*t^2 - 5*t + 1").unwrap()));
        assert!(RationalFn::zero().doteq(&RationalFn::zero()));
        assert!(!RationalFn::zero().doteq(&tref));
        // ≐ allows only ± units, not rational scalars
        assert!(!r("2 - 2*t").unwrap().doteq(&r("1 - t").unwrap()));
    }

    #[test]
    fn is_laurent_examples() {
        assert!(r("1 - t + t^2").unwrap().is_laurent());
        assert!(!r("1/(1 - t)").unwrap().is_laurent());
        assert!(r("(t^2 - t)/t^5").unwrap().is_laurent());
    }
}
