//! Alexander polynomials of knots and links, and checkers for the unitary
//! property, the Alexander–Conway skein relation and the Fox–Milnor condition.

mod burau;
mod report;

pub use burau::{burau_matrix, colored_burau_matrix};
pub use report::{Comparison, Report};

use thiserror::Error;

use crate::gamma::{GammaError, GammaElement, Sign};
use crate::linalg::Matrix;
use crate::polyalg::{Label, LaurentPoly, Monomial, RationalFn, Substitution, Target};
use crate::tangle::{
    braid_to_program, BraidGen, Statement, StringLinkPresentation, TangleError, TangleProgram,
    UpDownTangle,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("not a long knot: {0}")]
    NotALongKnot(String),
    #[error("braid closure is not a knot (the permutation is not an n-cycle)")]
    NotAKnotClosure,
    #[error("expected one open component, found {0}")]
    MultipleOpenComponents(usize),
    #[error("expected a Laurent polynomial, got {0}")]
    NotLaurent(String),
    #[error("τ-closure is not trivial: scalar {scalar}, block {block}")]
    NotRibbonWitness { scalar: String, block: String },
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

pub fn var_t() -> Label {
    Label::new("t").expect("valid label")
}

pub fn var_s() -> Label {
    Label::new("s").expect("valid label")
}

fn laurent(f: RationalFn) -> Result<LaurentPoly, InvariantError> {
    match f.as_laurent() {
        Some(p) => Ok(p.clone()),
        None => Err(InvariantError::NotLaurent(f.to_string())),
    }
}

/// Identify every variable of `f` with `t`.
pub fn collapse(f: &RationalFn, t: &Label) -> Result<RationalFn, InvariantError> {
    Ok(f.substitute(&Substitution::collapse(f.labels().iter(), t)).map_err(GammaError::from)?)
}

/// Representative of `p` up to ±tⁿ: lowest term at degree 0, positive leading coefficient.
pub fn unit_normal(p: &LaurentPoly) -> LaurentPoly {
    laurent(RationalFn::from_poly(p.clone()).unit_normal()).expect("Laurent input")
}

/// Alexander polynomial of the closure of a long knot: ω with all
/// variables set to `t`.
pub fn alexander_long_knot(p: &TangleProgram) -> Result<LaurentPoly, InvariantError> {
    let ev = p.evaluate()?;
    if !ev.closed.is_empty() {
        return Err(InvariantError::NotALongKnot("program closes strands".into()));
    }
    let g = &ev.tangle.gamma;
    if g.len() != 1 {
        return Err(InvariantError::NotALongKnot(format!("{} open strands", g.len())));
    }
    if !g.matrix().is_identity() {
        return Err(InvariantError::NotALongKnot(format!(
            "matrix part is {:?}, not [1]",
            g.matrix()
        )));
    }
    laurent(collapse(g.omega(), &var_t())?)
}

/// det of `[I − Burau(β)]` with the first row and column removed, computed
/// from the Burau generator matrices directly.
pub fn alexander_braid_closure(word: &[BraidGen], n: usize) -> Result<LaurentPoly, InvariantError> {
    let s = braid_to_program(word, n)?;
    // The closure is a knot iff following top→bottom positions visits every strand once.
    let mut seen = vec![false; n];
    let mut p = 0;
    for _ in 0..n {
        if seen[p] {
            return Err(InvariantError::NotAKnotClosure);
        }
        seen[p] = true;
        let l = &s.top[p];
        p = s.bottom.iter().position(|b| b == l).expect("top permutes bottom");
    }
    if p != 0 {
        return Err(InvariantError::NotAKnotClosure);
    }
    let b = burau_matrix(word, n, &var_t())?;
    let idx: Vec<usize> = (1..n).collect();
    let minor = Matrix::identity(n).sub(&b).select(&idx, &idx);
    laurent(minor.det())
}

/// Partial closure of a braid: every strand except the first is closed up.
/// Closures that complete a loop become `tr` statements.
pub fn partial_closure(word: &[BraidGen], n: usize) -> Result<TangleProgram, InvariantError> {
    let s = braid_to_program(word, n)?;
    let mut program = s.program.clone();
    let mut name: Vec<Label> = s.bottom.clone();
    let find = |name: &Vec<Label>, l: &Label| -> Label {
        let p = s.bottom.iter().position(|b| b == l).expect("strand label");
        name[p].clone()
    };
    let mut closed = Vec::new();
    for p in 1..n {
        let x = find(&name, &s.top[p]);
        let y = find(&name, &s.bottom[p]);
        if x == y {
            closed.push(x);
        } else {
            program.push(Statement::Stitch(x.clone(), y.clone(), x.clone()));
            for nm in name.iter_mut() {
                if *nm == y {
                    *nm = x.clone();
                }
            }
        }
    }
    if !closed.is_empty() {
        program.push(Statement::Trace(closed));
    }
    Ok(program)
}

/// Δ_L(s) = s^{−w} ω_L(s²) for a long w-link program whose closed components
/// are listed in trailing `tr` statements.
pub fn link_delta(p: &TangleProgram) -> Result<LaurentPoly, InvariantError> {
    let ev = p.evaluate()?;
    let open = ev.open_labels();
    if open.len() != 1 {
        return Err(InvariantError::MultipleOpenComponents(open.len()));
    }
    let scalar = ev.scalar()?;
    let s = var_s();
    let mut sub = Substitution::new();
    for l in scalar.labels() {
        sub.insert(l, Target::Monomial(Monomial::var_pow(s.clone(), 2)));
    }
    let f = scalar.substitute(&sub).map_err(GammaError::from)?;
    let f = f.mul_monomial(&Monomial::var_pow(s, -p.writhe()));
    laurent(f)
}

/// Δ_{L+} − Δ_{L−} = (s⁻¹ − s)·Δ_{L0} for the partial closures of β·σ_{n−1}^{±1} and β.
pub fn skein_check(word: &[BraidGen], n: usize) -> Result<Report, InvariantError> {
    if n < 2 {
        return Err(TangleError::IndexOutOfRange { index: 1, n }.into());
    }
    let with = |g: BraidGen| -> Vec<BraidGen> { word.iter().copied().chain([g]).collect() };
    let dp = link_delta(&partial_closure(&with(BraidGen::pos(n - 1)), n)?)?;
    let dm = link_delta(&partial_closure(&with(BraidGen::neg(n - 1)), n)?)?;
    let d0 = link_delta(&partial_closure(word, n)?)?;
    let s = var_s();
    let factor = &LaurentPoly::monomial(Monomial::var_pow(s.clone(), -1)) - &LaurentPoly::var(s);
    let lhs = &dp - &dm;
    let rhs = &factor * &d0;
    let mut r = Report::new(format!(
        "skein relation for β = [{}] on {n} strands",
        crate::tangle::format_braid_word(word)
    ));
    r.note("Δ(L+)", &dp);
    r.note("Δ(L-)", &dm);
    r.note("Δ(L0)", &d0);
    r.compare("Δ(L+) - Δ(L-) = (s^-1 - s)·Δ(L0)", &lhs, &rhs, lhs == rhs);
    Ok(r)
}

/// The lower-triangular form Ω: `(1 − t_l)⁻¹` on the diagonal, 1 below, 0 above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitarityForm {
    pub labels: Vec<Label>,
    pub omega_matrix: Matrix,
}

impl UnitarityForm {
    pub fn new(labels: &[Label]) -> Self {
        let n = labels.len();
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                RationalFn::one()
                    .sub(&RationalFn::var(labels[i].clone()))
                    .inv()
                    .expect("1 - t is nonzero")
            } else if i > j {
                RationalFn::one()
            } else {
                RationalFn::zero()
            }
        });
        UnitarityForm {
            labels: labels.to_vec(),
            omega_matrix: m,
        }
    }
}

/// (M^ρ)* Ω(bottom) M^ρ = Ω(top), conj(ω) ≐ ω·det(M^ρ) and conj(det)·det = 1.
pub fn unitarity_check(s: &StringLinkPresentation) -> Result<Report, InvariantError> {
    let (g, gm) = s.gassner()?;
    let m = &gm.matrix;
    let lhs = m.star().mul(&UnitarityForm::new(&s.bottom).omega_matrix).mul(m);
    let rhs = UnitarityForm::new(&s.top).omega_matrix;
    let det = m.det();
    let mut r = Report::new(match &s.braid {
        Some(b) => format!(
            "unitarity for β = [{}] on {} strands with {} closures",
            crate::tangle::format_braid_word(&b.word),
            b.n,
            b.closures
        ),
        None => "unitarity".to_string(),
    });
    r.compare("(M^ρ)* Ω M^ρ = Ω(ρ)", &format!("{lhs:?}"), &format!("{rhs:?}"), lhs == rhs);
    let conj = g.omega().conjugate();
    let wd = g.omega().mul(&det);
    r.compare("conj(ω) ≐ ω·det(M^ρ)", &conj, &wd, conj.doteq(&wd));
    let dd = det.conjugate().mul(&det);
    r.compare("conj(det M^ρ)·det M^ρ = 1", &dd, &"1", dd.is_one());
    Ok(r)
}

/// Evidence that the κ-closure of an up-down tangle is a ribbon knot whose
/// Alexander polynomial factors as f(t)·f(t⁻¹).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonCertificate {
    pub n: usize,
    pub tangle: UpDownTangle,
    /// ω·det(δ) in one variable.
    pub f: LaurentPoly,
    /// Alexander polynomial of the κ-closure.
    pub delta: LaurentPoly,
    pub report: Report,
}

/// τ-triviality, the two routes to f = ω·det(δ), the pairing with ω·det(α),
/// det(I−N) = det(P−M) on the κ-closure, and Δ ≐ f·f̄.
pub fn fox_milnor_check(u: &UpDownTangle) -> Result<RibbonCertificate, InvariantError> {
    let mut r = Report::new(format!("Fox-Milnor certificate for a {}-strand up-down tangle", 2 * u.n));
    let tau = u.tau_closure()?;
    if !(tau.gamma.omega().is_one() && tau.gamma.matrix().is_identity()) {
        return Err(InvariantError::NotRibbonWitness {
            scalar: tau.gamma.omega().to_string(),
            block: format!("{:?}", tau.gamma.matrix()),
        });
    }
    r.compare("τ-closure scalar ω·det(I−γ)", tau.gamma.omega(), &"1", true);
    r.compare("τ-closure block", &format!("{:?}", tau.gamma.matrix()), &"I", true);

    let t = u.evaluate()?;
    let g = &t.gamma;
    let odd = u.odd();
    let even = u.even();
    let block = |rows: &[Label], cols: &[Label]| -> Result<Matrix, GammaError> {
        let ri = rows.iter().map(|l| g.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        let ci = cols.iter().map(|l| g.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        Ok(g.matrix().select(&ri, &ci))
    };
    let f_direct = g.omega().mul(&block(&even, &even)?.det());
    let f_alpha = g.omega().mul(&block(&odd, &odd)?.det());

    // Reversal route: reverse the even strands, then undo the variable
    // inversion and the σ normalization on the scalar.
    let reversed = t.reverse_orientation(&even)?;
    let mut undo = Substitution::new();
    let mut sigma_prod = Monomial::one();
    for l in &even {
        undo.insert(l.clone(), Target::Inverse);
        sigma_prod = sigma_prod.mul(t.sigma.get(l).expect("σ covers every strand"));
    }
    let f_rev = reversed
        .gamma
        .omega()
        .substitute(&undo)
        .map_err(GammaError::from)?
        .mul_monomial(&sigma_prod);
    r.compare("ω·det(δ) via reversal = ω·det(δ) directly", &f_rev, &f_direct, f_rev == f_direct);
    let conj_f = f_direct.conjugate();
    r.compare(
        "conj(ω·det(δ)) ≐ ω·det(α)",
        &conj_f,
        &f_alpha,
        conj_f.doteq(&f_alpha),
    );

    let kappa = u.kappa_closure()?;
    // κ merges every variable into t_1; compare the determinants there.
    let one = Label::from(1usize);
    let merge = Substitution::collapse(g.labels().iter(), &one);
    let m = &g.matrix().substitute(&merge).map_err(GammaError::from)?;
    let size = 2 * u.n;
    let rows: Vec<usize> = (0..size - 1).collect();
    let cols: Vec<usize> = (1..size).collect();
    let i_minus_n = Matrix::identity(size - 1).sub(&m.select(&rows, &cols));
    let p = Matrix::from_fn(size, size, |i, j| {
        if j == i + 1 {
            RationalFn::one()
        } else {
            RationalFn::zero()
        }
    });
    let d1 = i_minus_n.det();
    let d2 = p.sub(m).det();
    r.compare("det(I−N) = det(P−M) at t_i = t_1", &d1, &d2, d1 == d2);
    let kappa_scalar = collapse(g.omega(), &one)?.mul(&d1);
    r.compare(
        "κ-closure ω = ω·det(I−N)",
        kappa.gamma.omega(),
        &kappa_scalar,
        kappa.gamma.omega() == &kappa_scalar,
    );

    let tv = var_t();
    let delta = laurent(collapse(kappa.gamma.omega(), &tv)?)?;
    let f = laurent(collapse(&f_direct, &tv)?)?;
    let fa = laurent(collapse(&f_alpha, &tv)?)?;
    let ff = &f * &f.conjugate();
    let eq_fm = &f * &fa;
    let dr = RationalFn::from_poly(delta.clone());
    r.compare(
        "Δ ≐ ω·det(α)·ω·det(δ)",
        &delta,
        &eq_fm,
        dr.doteq(&RationalFn::from_poly(eq_fm.clone())),
    );
    r.compare(
        "Δ ≐ f(t)·f(t⁻¹)",
        &delta,
        &ff,
        dr.doteq(&RationalFn::from_poly(ff.clone())),
    );
    Ok(RibbonCertificate {
        n: u.n,
        tangle: u.clone(),
        f,
        delta,
        report: r,
    })
}

/// Scalar of an element's trace with every variable set to `t`.
pub fn trace_in(g: &GammaElement, closed: &[Label], t: &Label) -> Result<RationalFn, InvariantError> {
    collapse(&g.trace(closed)?, t)
}

/// Crossing count weighted by sign.
pub fn writhe(word: &[BraidGen]) -> i64 {
    word.iter()
        .map(|g| if g.sign == Sign::Pos { 1 } else { -1 })
        .sum()
}
