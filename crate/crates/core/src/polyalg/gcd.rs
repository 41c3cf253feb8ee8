//! Multivariate gcd over ℤ by the recursive primitive-remainder-sequence
//! method. Polynomials are held in a recursive dense form: a polynomial in
//! `k` variables is a coefficient vector, indexed by the degree of the last
//! variable, of polynomials in the first `k - 1` variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Label, LaurentPoly, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
enum RPoly {
    Int(BigInt),
    Uni(Vec<RPoly>),
}

use RPoly::{Int, Uni};

fn zero(lvl: usize) -> RPoly {
    if lvl == 0 {
        Int(BigInt::zero())
    } else {
        Uni(Vec::new())
    }
}

fn one(lvl: usize) -> RPoly {
    if lvl == 0 {
        Int(BigInt::one())
    } else {
        Uni(vec![one(lvl - 1)])
    }
}

impl RPoly {
    fn is_zero(&self) -> bool {
        match self {
            Int(n) => n.is_zero(),
            Uni(c) => c.is_empty(),
        }
    }

    fn is_unit(&self) -> bool {
        match self {
            Int(n) => n.abs().is_one(),
            Uni(c) => c.len() == 1 && c[0].is_unit(),
        }
    }

    fn coeffs(&self) -> &[RPoly] {
        match self {
            Uni(c) => c,
            Int(_) => unreachable!("coefficient access at level 0"),
        }
    }

    fn deg(&self) -> usize {
        self.coeffs().len().saturating_sub(1)
    }

    fn lc(&self) -> &RPoly {
        self.coeffs().last().expect("leading coefficient of zero")
    }

    /// Sign of the innermost leading integer coefficient.
    fn lead_sign_negative(&self) -> bool {
        match self {
            Int(n) => n.is_negative(),
            Uni(c) => c.last().map(|l| l.lead_sign_negative()).unwrap_or(false),
        }
    }
}

fn trim(mut v: Vec<RPoly>) -> RPoly {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    Uni(v)
}

fn add(a: &RPoly, b: &RPoly, lvl: usize) -> RPoly {
    match (a, b) {
        (Int(x), Int(y)) => Int(x + y),
        (Uni(x), Uni(y)) => {
            let n = x.len().max(y.len());
            let mut v = Vec::with_capacity(n);
            for i in 0..n {
                v.push(match (x.get(i), y.get(i)) {
                    (Some(p), Some(q)) => add(p, q, lvl - 1),
                    (Some(p), None) => p.clone(),
                    (None, Some(q)) => q.clone(),
                    (None, None) => zero(lvl - 1),
                });
            }
            trim(v)
        }
        _ => unreachable!("level mismatch"),
    }
}

fn neg(a: &RPoly) -> RPoly {
    match a {
        Int(x) => Int(-x),
        Uni(c) => Uni(c.iter().map(neg).collect()),
    }
}

fn sub(a: &RPoly, b: &RPoly, lvl: usize) -> RPoly {
    add(a, &neg(b), lvl)
}

fn mul(a: &RPoly, b: &RPoly, lvl: usize) -> RPoly {
    match (a, b) {
        (Int(x), Int(y)) => Int(x * y),
        (Uni(x), Uni(y)) => {
            if x.is_empty() || y.is_empty() {
                return zero(lvl);
            }
            let mut v = vec![zero(lvl - 1); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (j, q) in y.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let prod = mul(p, q, lvl - 1);
                    v[i + j] = add(&v[i + j], &prod, lvl - 1);
                }
            }
            trim(v)
        }
        _ => unreachable!("level mismatch"),
    }
}

/// Multiply by a polynomial one level down (i.e. free of the main variable).
fn mul_coeff(a: &RPoly, c: &RPoly, lvl: usize) -> RPoly {
    trim(a.coeffs().iter().map(|p| mul(p, c, lvl - 1)).collect())
}

fn shift(a: &RPoly, k: usize, lvl: usize) -> RPoly {
    if a.is_zero() {
        return a.clone();
    }
    let mut v = vec![zero(lvl - 1); k];
    v.extend(a.coeffs().iter().cloned());
    Uni(v)
}

fn div_exact(a: &RPoly, b: &RPoly, lvl: usize) -> Option<RPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(zero(lvl));
    }
    if let (Int(x), Int(y)) = (a, b) {
        let (q, r) = x.div_rem(y);
        return if r.is_zero() { Some(Int(q)) } else { None };
    }
    let db = b.deg();
    let mut r = a.clone();
    if r.deg() < db {
        return None;
    }
    let mut q = vec![zero(lvl - 1); r.deg() - db + 1];
    while !r.is_zero() && r.deg() >= db {
        let k = r.deg() - db;
        let c = div_exact(r.lc(), b.lc(), lvl - 1)?;
        let t = shift(&mul_coeff(b, &c, lvl), k, lvl);
        r = sub(&r, &t, lvl);
        q[k] = c;
    }
    if r.is_zero() {
        Some(trim(q))
    } else {
        None
    }
}

fn prem(a: &RPoly, b: &RPoly, lvl: usize) -> RPoly {
    let db = b.deg();
    let lb = b.lc().clone();
    let mut r = a.clone();
    let mut e = (a.deg() + 1).saturating_sub(db) as i64;
    while !r.is_zero() && r.deg() >= db {
        let k = r.deg() - db;
        let lr = r.lc().clone();
        r = sub(
            &mul_coeff(&r, &lb, lvl),
            &shift(&mul_coeff(b, &lr, lvl), k, lvl),
            lvl,
        );
        e -= 1;
    }
    for _ in 0..e.max(0) {
        r = mul_coeff(&r, &lb, lvl);
    }
    r
}

fn normalize(a: RPoly) -> RPoly {
    if a.lead_sign_negative() {
        neg(&a)
    } else {
        a
    }
}

fn content(a: &RPoly, lvl: usize) -> RPoly {
    let mut g = zero(lvl - 1);
    for c in a.coeffs() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c, lvl - 1);
        if g.is_unit() {
            break;
        }
    }
    g
}

fn primitive_part(a: &RPoly, lvl: usize) -> RPoly {
    let c = content(a, lvl);
    if c.is_unit() {
        return normalize(a.clone());
    }
    let v = a
        .coeffs()
        .iter()
        .map(|p| div_exact(p, &c, lvl - 1).expect("content divides coefficients"))
        .collect();
    normalize(trim(v))
}

fn gcd(a: &RPoly, b: &RPoly, lvl: usize) -> RPoly {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    if lvl == 0 {
        if let (Int(x), Int(y)) = (a, b) {
            return Int(x.gcd(y));
        }
        unreachable!("level mismatch");
    }
    if let Some(h) = heu_gcd(a, b, lvl) {
        return normalize(h);
    }
    let ca = content(a, lvl);
    let cb = content(b, lvl);
    let c = gcd(&ca, &cb, lvl - 1);
    let strip = |p: &RPoly, cp: &RPoly| -> RPoly {
        if cp.is_unit() {
            p.clone()
        } else {
            trim(
                p.coeffs()
                    .iter()
                    .map(|q| div_exact(q, cp, lvl - 1).expect("content divides"))
                    .collect(),
            )
        }
    };
    let mut p = strip(a, &ca);
    let mut q = strip(b, &cb);
    if p.deg() < q.deg() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.deg() == 0 {
            break one(lvl);
        }
        let r = prem(&p, &q, lvl);
        if r.is_zero() {
            break q;
        }
        p = q;
        q = primitive_part(&r, lvl);
    };
    normalize(mul_coeff(&g, &c, lvl))
}

fn max_norm(p: &RPoly) -> BigInt {
    match p {
        Int(n) => n.abs(),
        Uni(c) => c.iter().map(max_norm).max().unwrap_or_default(),
    }
}

fn lead_int(p: &RPoly) -> BigInt {
    match p {
        Int(n) => n.abs(),
        Uni(c) => c.last().map(lead_int).unwrap_or_default(),
    }
}

fn map_int(p: &RPoly, f: &impl Fn(&BigInt) -> BigInt) -> RPoly {
    match p {
        Int(n) => Int(f(n)),
        Uni(c) => trim(c.iter().map(|q| map_int(q, f)).collect()),
    }
}

/// Substitute the integer `x` for the main variable.
fn eval_main(p: &RPoly, x: &BigInt, lvl: usize) -> RPoly {
    let mut acc = zero(lvl - 1);
    for c in p.coeffs().iter().rev() {
        acc = add(&map_int(&acc, &|n| n * x), c, lvl - 1);
    }
    acc
}

/// Rebuild a polynomial in the main variable from its value at `x`, reading
/// the coefficients off as balanced base-`x` digits.
fn interpolate(mut h: RPoly, x: &BigInt, lvl: usize) -> RPoly {
    let half = x / 2;
    let mut digits = Vec::new();
    while !h.is_zero() {
        let g = map_int(&h, &|n| {
            let r = n.mod_floor(x);
            if r > half {
                r - x
            } else {
                r
            }
        });
        h = map_int(&sub(&h, &g, lvl - 1), &|n| n / x);
        digits.push(g);
    }
    trim(digits)
}

/// Heuristic gcd: evaluate the main variable at a large integer, recurse,
/// and interpolate back. A candidate is only accepted after it divides both
/// inputs exactly, so `None` means "fall back", never a wrong answer.
fn heu_gcd(f: &RPoly, g: &RPoly, lvl: usize) -> Option<RPoly> {
    if lvl == 0 {
        if let (Int(x), Int(y)) = (f, g) {
            return Some(Int(x.gcd(y)));
        }
        unreachable!("level mismatch");
    }
    if f.is_zero() || g.is_zero() {
        return Some(normalize(if f.is_zero() { g.clone() } else { f.clone() }));
    }
    let cf = int_content(f);
    let cg = int_content(g);
    let ic = cf.gcd(&cg);
    let f = map_int(f, &|n| n / &cf);
    let g = map_int(g, &|n| n / &cg);
    let (fnorm, gnorm) = (max_norm(&f), max_norm(&g));
    let b: BigInt = 2 * fnorm.clone().min(gnorm.clone()) + 29;
    let mut x = b.clone().min(99 * b.sqrt()).max(
        2 * (&fnorm / lead_int(&f)).min(&gnorm / lead_int(&g)) + 2,
    );
    for _ in 0..6 {
        let ff = eval_main(&f, &x, lvl);
        let gg = eval_main(&g, &x, lvl);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu_gcd(&ff, &gg, lvl - 1) {
                let h = interpolate(h, &x, lvl);
                if !h.is_zero() {
                    let c = int_content(&h);
                    let h = normalize(map_int(&h, &|n| n / &c));
                    if div_exact(&f, &h, lvl).is_some() && div_exact(&g, &h, lvl).is_some() {
                        return Some(map_int(&h, &|n| n * &ic));
                    }
                }
            }
        }
        x = 73794 * &x * x.sqrt().sqrt() / 27011;
    }
    None
}

/// Integer polynomial in the variables of `vars`, with the monomial shift
/// and rational scale needed to recover the original Laurent polynomial:
/// `original = scale * shift * poly`.
struct Lifted {
    poly: RPoly,
    shift: Monomial,
    scale: BigRational,
}

fn lift(p: &LaurentPoly, vars: &[Label]) -> Lifted {
    let mut shift = p.terms().next().map(|(m, _)| m.clone()).unwrap_or_default();
    for (m, _) in p.terms() {
        shift = shift.min_with(m);
    }
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut rows: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let shifted = m.div(&shift);
        let exps: Vec<u32> = vars
            .iter()
            .map(|v| {
                let e = shifted.exponent(v);
                debug_assert!(e >= 0);
                e as u32
            })
            .collect();
        let n = c.numer() * (&lcm / c.denom());
        rows.push((exps, n));
    }
    Lifted {
        poly: build(&mut rows, vars.len()),
        shift,
        scale: BigRational::new(BigInt::one(), lcm),
    }
}

fn build(rows: &mut [(Vec<u32>, BigInt)], lvl: usize) -> RPoly {
    if lvl == 0 {
        return Int(rows.iter().map(|(_, c)| c.clone()).sum());
    }
    if rows.is_empty() {
        return zero(lvl);
    }
    let var = lvl - 1;
    rows.sort_by_key(|(e, _)| e[var]);
    let maxd = rows.last().unwrap().0[var] as usize;
    let mut v = Vec::with_capacity(maxd + 1);
    let mut start = 0;
    for d in 0..=maxd {
        let mut end = start;
        while end < rows.len() && rows[end].0[var] as usize == d {
            end += 1;
        }
        v.push(build(&mut rows[start..end], lvl - 1));
        start = end;
    }
    trim(v)
}

fn lower(p: &RPoly, vars: &[Label], lvl: usize, exps: &mut Vec<i64>, out: &mut Vec<(Monomial, BigInt)>) {
    match p {
        Int(n) => {
            if !n.is_zero() {
                let m = Monomial::from_pairs(
                    vars.iter().cloned().zip(exps.iter().rev().cloned()),
                );
                out.push((m, n.clone()));
            }
        }
        Uni(c) => {
            for (d, q) in c.iter().enumerate() {
                exps.push(d as i64);
                lower(q, vars, lvl - 1, exps, out);
                exps.pop();
            }
        }
    }
}

fn to_laurent(p: &RPoly, vars: &[Label], shift: &Monomial, scale: &BigRational) -> LaurentPoly {
    // exps is pushed outermost-first, i.e. in reverse variable order.
    let mut out = Vec::new();
    lower(p, vars, vars.len(), &mut Vec::new(), &mut out);
    LaurentPoly::from_terms(
        out.into_iter()
            .map(|(m, c)| (m.mul(shift), BigRational::from_integer(c) * scale)),
    )
}

fn union_vars(a: &LaurentPoly, b: &LaurentPoly) -> Vec<Label> {
    let mut v: Vec<Label> = a.labels().into_iter().chain(b.labels()).collect();
    v.sort();
    v.dedup();
    v
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn reduce_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = n.mod_floor(&p);
    r.try_into().expect("residue fits")
}

/// Univariate image mod p of an integer polynomial given as exponent rows,
/// keeping variable `v` and evaluating the rest at `point`.
fn image(rows: &[(Vec<u32>, BigInt)], v: usize, point: &[u64]) -> Vec<u64> {
    let deg = rows.iter().map(|(e, _)| e[v] as usize).max().unwrap_or(0);
    let mut out = vec![0u64; deg + 1];
    for (e, c) in rows {
        let mut x = reduce_mod(c);
        for (k, &ek) in e.iter().enumerate() {
            if k != v && ek > 0 {
                x = mulmod(x, powmod(point[k], ek as u64));
            }
        }
        let slot = &mut out[e[v] as usize];
        *slot = (*slot + x) % PRIME;
    }
    out
}

fn trim_mod(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree of the univariate gcd over 𝔽_p (both inputs nonzero).
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    a = trim_mod(a);
    b = trim_mod(b);
    while !b.is_empty() {
        // a ← a mod b
        let inv = powmod(*b.last().unwrap(), PRIME - 2);
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv);
            let k = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[k + i] = (a[k + i] + PRIME - mulmod(q, bi)) % PRIME;
            }
            a = trim_mod(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn exponent_rows(p: &LaurentPoly, vars: &[Label]) -> Vec<(Vec<u32>, BigInt)> {
    let mut shift = p.terms().next().map(|(m, _)| m.clone()).unwrap_or_default();
    for (m, _) in p.terms() {
        shift = shift.min_with(m);
    }
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    p.terms()
        .map(|(m, c)| {
            let m = m.div(&shift);
            let e = vars.iter().map(|v| m.exponent(v) as u32).collect();
            (e, c.numer() * (&lcm / c.denom()))
        })
        .collect()
}

/// True when the images mod p prove that `a` and `b` share no factor of
/// positive degree. `false` is inconclusive.
fn certainly_coprime(a: &LaurentPoly, b: &LaurentPoly, vars: &[Label]) -> bool {
    let ra = exponent_rows(a, vars);
    let rb = exponent_rows(b, vars);
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed % (PRIME - 2) + 2
    };
    'var: for v in 0..vars.len() {
        let da = ra.iter().map(|(e, _)| e[v]).max().unwrap_or(0) as usize;
        let db = rb.iter().map(|(e, _)| e[v]).max().unwrap_or(0) as usize;
        if da == 0 || db == 0 {
            continue;
        }
        for _ in 0..2 {
            let point: Vec<u64> = (0..vars.len()).map(|_| next()).collect();
            let ia = image(&ra, v, &point);
            let ib = image(&rb, v, &point);
            // Leading coefficients must survive so the gcd's degree cannot drop.
            if ia[da] == 0 || ib[db] == 0 {
                continue;
            }
            if gcd_degree_mod(ia, ib) == 0 {
                continue 'var;
            }
            return false;
        }
        return false;
    }
    true
}

/// Divide out the gcd of `num` and `den` (Laurent monomials count as units).
/// Returns `(num', den')` with `num/den = num'/den'`.
pub(crate) fn cancel(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let vars = union_vars(num, den);
    if certainly_coprime(num, den, &vars) {
        return (num.clone(), den.clone());
    }
    let n = lift(num, &vars);
    let d = lift(den, &vars);
    let lvl = vars.len();
    let g = gcd(&n.poly, &d.poly, lvl);
    if g.is_unit() {
        return (num.clone(), den.clone());
    }
    let nq = div_exact(&n.poly, &g, lvl).expect("gcd divides numerator");
    let dq = div_exact(&d.poly, &g, lvl).expect("gcd divides denominator");
    (
        to_laurent(&nq, &vars, &n.shift, &n.scale),
        to_laurent(&dq, &vars, &d.shift, &d.scale),
    )
}

/// Exact quotient in the Laurent polynomial ring, if one exists.
pub(crate) fn divide(num: &LaurentPoly, den: &LaurentPoly) -> Option<LaurentPoly> {
    if den.is_zero() {
        return None;
    }
    if num.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let vars = union_vars(num, den);
    let n = lift(num, &vars);
    let d = lift(den, &vars);
    let lvl = vars.len();
    // Make the divisor primitive over ℤ so exactness over ℚ matches exactness over ℤ.
    let ic = int_content(&d.poly);
    let dp = div_exact(&d.poly, &scalar(&ic, lvl), lvl).expect("content divides");
    let q = div_exact(&n.poly, &dp, lvl)?;
    let scale = &n.scale / (&d.scale * BigRational::from_integer(ic));
    Some(to_laurent(&q, &vars, &n.shift.div(&d.shift), &scale))
}

fn int_content(p: &RPoly) -> BigInt {
    match p {
        Int(n) => n.abs(),
        Uni(c) => c.iter().fold(BigInt::zero(), |g, q| g.gcd(&int_content(q))),
    }
}

fn scalar(c: &BigInt, lvl: usize) -> RPoly {
    if lvl == 0 {
        Int(c.clone())
    } else {
        Uni(vec![scalar(c, lvl - 1)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        let (n, d) = cancel(&p("t_1^2 - 1"), &p("t_1 - 1"));
        assert_eq!(d.len(), 1);
        assert_eq!(n, p("t_1 + 1").scale(&d.terms().next().unwrap().1.recip()));
    }

    #[test]
    fn multivariate_gcd() {
        let g = p("t_1*t_2 - t_3 + 2");
        let a = &g * &p("t_1 + t_2^2");
        let b = &g * &p("t_3 - t_1*t_3 + 5");
        let (n, d) = cancel(&a, &b);
        // a/b == n/d and the cofactors no longer share g
        assert_eq!(&a * &d, &b * &n);
        assert!(divide(&n, &g).is_none());
    }

    #[test]
    fn laurent_units_ignored() {
        let (n, d) = cancel(&p("t_1^-1 - t_1^-2"), &p("t_1^3 - t_1^2"));
        assert_eq!(&n * &p("t_1^3 - t_1^2"), &d * &p("t_1^-1 - t_1^-2"));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn exact_division() {
        let a = p("t_1^2 - t_2^2");
        assert_eq!(divide(&a, &p("t_1 - t_2")), Some(p("t_1 + t_2")));
        assert_eq!(divide(&a, &p("2*t_1 - 2*t_2")), Some(p("1/2*t_1 + 1/2*t_2")));
        assert_eq!(divide(&a, &p("t_1 + 2")), None);
        assert_eq!(divide(&p("t_1"), &p("t_1^3")), Some(p("t_1^-2")));
    }
}
