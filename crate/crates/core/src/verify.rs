//! Seeded randomized checks of the structural identities: the relations R2,
//! R3 and OC, the meta-monoid axioms, bulk stitching, column sums and
//! polynomiality, Gassner matrices, unitarity, the skein relation, the trace,
//! orientation reversal and Fox-Milnor certificates.
//!
//! Case `i` of a run draws from its own ChaCha stream (`seed`, stream `i`),
//! so cases are independent of each other and of the thread schedule.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gamma::{GammaElement, Sign, SigmaElement, StitchSpec, Tangle};
use crate::invariants::{
    burau_matrix, colored_burau_matrix, fox_milnor_check, link_delta, partial_closure, skein_check,
    unitarity_check,
};
use crate::linalg::Matrix;
use crate::polyalg::{parse_rational, Label, Monomial, RationalFn, Substitution, Target};
use crate::tangle::{
    braid_to_program, double, format_braid_word, BraidForm, BraidGen, Statement, StitchMode,
    StringLinkPresentation, TangleProgram,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    R2,
    R3,
    Oc,
    MetaAssoc,
    OrderIndependence,
    ColumnSum,
    Polynomiality,
    Gassner,
    Unitarity,
    Skein,
    Trace,
    Reversal,
    FoxMilnor,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::R2,
        Suite::R3,
        Suite::Oc,
        Suite::MetaAssoc,
        Suite::OrderIndependence,
        Suite::ColumnSum,
        Suite::Polynomiality,
        Suite::Gassner,
        Suite::Unitarity,
        Suite::Skein,
        Suite::Trace,
        Suite::Reversal,
        Suite::FoxMilnor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::R2 => "r2",
            Suite::R3 => "r3",
            Suite::Oc => "oc",
            Suite::MetaAssoc => "meta-assoc",
            Suite::OrderIndependence => "order-independence",
            Suite::ColumnSum => "column-sum",
            Suite::Polynomiality => "polynomiality",
            Suite::Gassner => "gassner",
            Suite::Unitarity => "unitarity",
            Suite::Skein => "skein",
            Suite::Trace => "trace",
            Suite::Reversal => "reversal",
            Suite::FoxMilnor => "fox-milnor",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Outcome of one case. Fixed cases (exact symbolic checks run before the
/// random ones) have no index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub index: Option<usize>,
    pub input: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Number of random cases, and how many of them passed.
    pub fn random_counts(&self) -> (usize, usize) {
        let r: Vec<_> = self.cases.iter().filter(|c| c.index.is_some()).collect();
        (r.len(), r.iter().filter(|c| c.pass).count())
    }

    /// Number of fixed cases, and how many of them passed.
    pub fn fixed_counts(&self) -> (usize, usize) {
        let r: Vec<_> = self.cases.iter().filter(|c| c.index.is_none()).collect();
        (r.len(), r.iter().filter(|c| c.pass).count())
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fixed, fixed_ok) = self.fixed_counts();
        let (random, random_ok) = self.random_counts();
        write!(
            f,
            "{}: fixed {fixed_ok}/{fixed}, random {random_ok}/{random} (seed {})",
            self.suite, self.seed
        )
    }
}

/// Run the fixed cases of `suite`, then `cases` random ones.
pub fn run(suite: Suite, seed: u64, cases: usize) -> SuiteResult {
    let mut out: Vec<CaseResult> = fixed_cases(suite)
        .into_iter()
        .map(|c| c.into_result(None))
        .collect();
    let random: Vec<CaseResult> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            random_case(suite, &mut rng).into_result(Some(i))
        })
        .collect();
    out.extend(random);
    SuiteResult { suite, seed, cases: out }
}

struct Case {
    input: String,
    outcome: Result<(), String>,
}

impl Case {
    fn new(input: impl Into<String>, check: impl FnOnce() -> Result<(), String>) -> Case {
        Case {
            input: input.into(),
            outcome: check(),
        }
    }

    fn into_result(self, index: Option<usize>) -> CaseResult {
        let (pass, detail) = match self.outcome {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        CaseResult {
            index,
            input: self.input,
            pass,
            detail,
        }
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_tangle(what: &str, x: &Tangle, y: &Tangle) -> Result<(), String> {
    if x.gamma != y.gamma {
        return Err(format!(
            "{what}: Γ parts differ (ω = {} vs {}; labels {:?} vs {:?})",
            x.gamma.omega(),
            y.gamma.omega(),
            x.labels(),
            y.labels()
        ));
    }
    ensure(x.sigma == y.sigma, || format!("{what}: σ parts differ"))
}

fn lbl(s: &str) -> Label {
    Label::new(s).expect("valid label token")
}

fn run_program(p: &TangleProgram) -> Result<Tangle, String> {
    Ok(p.evaluate().map_err(err)?.tangle)
}

// ---------------------------------------------------------------- generators

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A braid word on `n` strands with at most `max_len` letters.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Vec<BraidGen> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| BraidGen::new(rng.gen_range(1..n), random_sign(rng)))
        .collect()
}

/// A braid on 2..=`max_n` strands with at most `max_len` letters.
pub fn random_braid<R: Rng>(rng: &mut R, max_n: usize, max_len: usize) -> (Vec<BraidGen>, usize) {
    let n = rng.gen_range(2..=max_n.max(2));
    (random_word(rng, n, max_len), n)
}

/// A random tangle program: `crossings` crossings on the labels `1..2k`,
/// followed by random stitches that leave at least `min_open` open strands.
/// With `extras`, identities, deletions, renamings and reversals are mixed
/// in. Returns the program and its open labels.
pub fn random_program<R: Rng>(
    rng: &mut R,
    crossings: usize,
    min_open: usize,
    extras: bool,
) -> (TangleProgram, Vec<Label>) {
    let mut ids: Vec<usize> = (1..=2 * crossings).collect();
    ids.shuffle(rng);
    let mut p = TangleProgram::default();
    for pair in ids.chunks(2) {
        p.push(Statement::Crossing {
            sign: random_sign(rng),
            over: Label::from(pair[0]),
            under: Label::from(pair[1]),
        });
    }
    let mut live: Vec<Label> = (1..=2 * crossings).map(Label::from).collect();
    let mut next = 2 * crossings + 1;
    let floor = min_open.max(1);
    let steps = rng.gen_range(0..=live.len().saturating_sub(floor)) + if extras { 3 } else { 0 };
    for _ in 0..steps {
        let kind = if extras { rng.gen_range(0..8) } else { 0 };
        match kind {
            0..=3 if live.len() > floor => {
                let i = rng.gen_range(0..live.len());
                let mut j = rng.gen_range(0..live.len() - 1);
                if j >= i {
                    j += 1;
                }
                let (a, b) = (live[i].clone(), live[j].clone());
                let keep_a = rng.gen_bool(0.5);
                let c = if keep_a { a.clone() } else { b.clone() };
                p.push(Statement::Stitch(a, b, c));
                live.remove(if keep_a { j } else { i });
            }
            4 => {
                let x = Label::from(next);
                next += 1;
                p.push(Statement::Identity(x.clone()));
                live.push(x);
            }
            5 if live.len() > floor => {
                let i = rng.gen_range(0..live.len());
                p.push(Statement::Delete(live.remove(i)));
            }
            6 if !live.is_empty() => {
                let i = rng.gen_range(0..live.len());
                let w = Label::from(next);
                next += 1;
                p.push(Statement::Rename(live[i].clone(), w.clone()));
                live[i] = w;
            }
            7 if !live.is_empty() => {
                let k = rng.gen_range(1..=live.len().min(2));
                let v: Vec<Label> = live.choose_multiple(rng, k).cloned().collect();
                p.push(Statement::Reverse(v));
            }
            _ => {}
        }
    }
    (p, live)
}

/// c·(m − 1) for a random small monomial m and c ∈ {±1, ±2}: vanishes at t = 1.
fn random_vanishing<R: Rng>(rng: &mut R, labels: &[Label]) -> RationalFn {
    let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    let mut m = Monomial::one();
    for _ in 0..rng.gen_range(1..=2) {
        let l = labels.choose(rng).expect("labels").clone();
        m = m.mul(&Monomial::var_pow(l, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    RationalFn::from_int(c).mul(&RationalFn::monomial(m).sub(&RationalFn::one()))
}

/// A random element of Γ^X that is not in general the image of a tangle:
/// ω and M are perturbed by Laurent terms vanishing at t = 1.
pub fn random_gamma<R: Rng>(rng: &mut R, labels: &[Label]) -> GammaElement {
    let mut omega = RationalFn::one();
    if rng.gen_bool(0.5) {
        omega = omega.add(&random_vanishing(rng, labels));
    }
    let n = labels.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.4) {
                m.set(i, j, m.get(i, j).add(&random_vanishing(rng, labels)));
            }
        }
    }
    GammaElement::new(labels.to_vec(), omega, m).expect("random element is well formed")
}

/// Random σ values: each a monomial of small degree in the labels.
pub fn random_sigma<R: Rng>(rng: &mut R, labels: &[Label]) -> SigmaElement {
    let mut s = SigmaElement::new();
    for l in labels {
        let mut m = Monomial::one();
        for _ in 0..rng.gen_range(0..=2) {
            let v = labels.choose(rng).expect("labels").clone();
            m = m.mul(&Monomial::var_pow(v, if rng.gen_bool(0.5) { 1 } else { -1 }));
        }
        s.insert(l.clone(), m);
    }
    s
}

/// A random tangle image with at least `min_open` strands, from 1..=`max_x`
/// crossings (enough to supply the strands).
fn random_tangle<R: Rng>(rng: &mut R, min_open: usize, max_x: usize) -> Result<(TangleProgram, Tangle), String> {
    let lo = min_open.div_ceil(2).max(1);
    let k = rng.gen_range(lo..=max_x.max(lo));
    let (p, _) = random_program(rng, k, min_open, false);
    let t = run_program(&p)?;
    Ok((p, t))
}

/// Either a random tangle image or a random Γ^X element with random σ, on
/// at least `min_open` strands.
fn random_element<R: Rng>(rng: &mut R, min_open: usize) -> Result<(String, Tangle), String> {
    if rng.gen_bool(0.5) {
        let (p, t) = random_tangle(rng, min_open, 3)?;
        Ok((program_line(&p), t))
    } else {
        let n = rng.gen_range(min_open..=min_open + 1);
        let labels: Vec<Label> = (1..=n).map(Label::from).collect();
        let gamma = random_gamma(rng, &labels);
        let sigma = random_sigma(rng, &labels);
        let input = format!("generic element {}", gamma_line(&gamma));
        Ok((input, Tangle { gamma, sigma }))
    }
}

/// A random pure string link in braid-plus-rightmost-closure form.
pub fn random_pure_string_link<R: Rng>(rng: &mut R, max_n: usize, max_len: usize) -> StringLinkPresentation {
    loop {
        let n = rng.gen_range(2..=max_n.max(2));
        let word = random_word(rng, n, max_len);
        let closures = rng.gen_range(0..=1usize.min(n - 1));
        if let Ok(s) = StringLinkPresentation::from_braid_form(&BraidForm { n, word, closures }) {
            if s.is_pure() && s.components() >= 1 {
                return s;
            }
        }
    }
}

fn program_line(p: &TangleProgram) -> String {
    p.to_string().trim_end().replace('\n', "; ")
}

fn gamma_line(g: &GammaElement) -> String {
    let n = g.len();
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let row: Vec<String> = g.matrix().row(i).iter().map(|e| e.to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("ω = {} on {:?}, M = [{}]", g.omega(), g.labels(), rows.join(", "))
}

fn braid_line(word: &[BraidGen], n: usize) -> String {
    format!("[{}] on {n} strands", format_braid_word(word))
}

// ----------------------------------------------------------- dispatch

fn fixed_cases(suite: Suite) -> Vec<Case> {
    match suite {
        Suite::R2 => fixed_r2(),
        Suite::R3 => fixed_r3(),
        Suite::Oc => fixed_oc(),
        Suite::MetaAssoc => vec![],
        Suite::OrderIndependence => vec![],
        Suite::ColumnSum | Suite::Polynomiality => vec![],
        Suite::Gassner => fixed_gassner(),
        Suite::Unitarity => fixed_unitarity(),
        Suite::Skein => vec![],
        Suite::Trace => fixed_trace(),
        Suite::Reversal => fixed_reversal(),
        Suite::FoxMilnor => fixed_fox_milnor(),
    }
}

fn random_case(suite: Suite, rng: &mut ChaCha8Rng) -> Case {
    match suite {
        Suite::R2 => case_r2(rng),
        Suite::R3 => case_r3(rng),
        Suite::Oc => case_oc(rng),
        Suite::MetaAssoc => case_meta_assoc(rng),
        Suite::OrderIndependence => case_order(rng),
        Suite::ColumnSum => case_column_sum(rng),
        Suite::Polynomiality => case_polynomiality(rng),
        Suite::Gassner => case_gassner(rng),
        Suite::Unitarity => case_unitarity(rng),
        Suite::Skein => case_skein(rng),
        Suite::Trace => case_trace(rng),
        Suite::Reversal => case_reversal(rng),
        Suite::FoxMilnor => case_fox_milnor(rng),
    }
}

// ----------------------------------------------------------- relations

/// A local piece: statements over the labels `p1, p2, …` with the given
/// open strands.
struct Piece {
    statements: Vec<Statement>,
    open: Vec<Label>,
}

fn piece(src: &str, open: &[&str]) -> Piece {
    Piece {
        statements: TangleProgram::parse(src).expect("piece parses").statements,
        open: open.iter().map(|s| lbl(s)).collect(),
    }
}

fn r2_pieces(s: Sign) -> (Piece, Piece) {
    let (a, b) = if s == Sign::Pos { ("+", "-") } else { ("-", "+") };
    (
        piece(&format!("X{a} p1 p3\nX{b} p4 p2\nm p1 p4 p1\nm p3 p2 p2"), &["p1", "p2"]),
        piece("e p1\ne p2", &["p1", "p2"]),
    )
}

fn r3_pieces(mirror: bool) -> (Piece, Piece) {
    let (p, m) = if mirror { ("-", "+") } else { ("+", "-") };
    (
        piece(
            &format!("X{p} p1 p4\nX{p} p2 p5\nX{m} p6 p3\nm p1 p6 p1\nm p2 p4 p2\nm p3 p5 p3"),
            &["p1", "p2", "p3"],
        ),
        piece(
            &format!("X{m} p1 p5\nX{p} p4 p3\nX{p} p6 p2\nm p1 p6 p1\nm p2 p4 p2\nm p3 p5 p3"),
            &["p1", "p2", "p3"],
        ),
    )
}

fn oc_pieces(s1: Sign, s2: Sign) -> (Piece, Piece) {
    let c = |s: Sign| if s == Sign::Pos { '+' } else { '-' };
    let (a, b) = (c(s1), c(s2));
    (
        piece(&format!("X{a} p1 p2\nX{b} p3 p4\nm p1 p3 p5"), &["p5", "p2", "p4"]),
        piece(&format!("X{b} p1 p4\nX{a} p3 p2\nm p1 p3 p5"), &["p5", "p2", "p4"]),
    )
}

fn piece_program(p: &Piece) -> TangleProgram {
    TangleProgram::new(p.statements.clone())
}

/// Glue both sides of a relation into the same random context: a random
/// tangle on disjoint labels and random stitches joining everything up.
fn in_context<R: Rng>(rng: &mut R, lhs: &Piece, rhs: &Piece) -> (TangleProgram, TangleProgram) {
    let k = rng.gen_range(1..=3);
    let (ctx, ctx_open) = random_program(rng, k, 1, false);
    let mut live: Vec<Label> = ctx_open.into_iter().chain(lhs.open.iter().cloned()).collect();
    let mut glue = Vec::new();
    let stitches = rng.gen_range(1..live.len());
    for _ in 0..stitches {
        let i = rng.gen_range(0..live.len());
        let mut j = rng.gen_range(0..live.len() - 1);
        if j >= i {
            j += 1;
        }
        glue.push(Statement::Stitch(live[i].clone(), live[j].clone(), live[i].clone()));
        live.remove(j);
    }
    let build = |p: &Piece| {
        let mut st = ctx.statements.clone();
        st.extend(p.statements.iter().cloned());
        st.extend(glue.iter().cloned());
        TangleProgram::new(st)
    };
    (build(lhs), build(rhs))
}

fn compare_programs(what: &str, a: &TangleProgram, b: &TangleProgram) -> Result<(), String> {
    same_tangle(what, &run_program(a)?, &run_program(b)?)
}

fn braid_tangle(word: &[BraidGen], n: usize, closures: usize) -> Result<Tangle, String> {
    let s = StringLinkPresentation::from_braid_form(&BraidForm {
        n,
        word: word.to_vec(),
        closures,
    })
    .map_err(err)?;
    run_program(&s.program)
}

/// Compare two braid words on `n` strands, both with the same number of
/// rightmost closures (dropped to zero when a closure would close a loop).
fn braid_case(lhs: Vec<BraidGen>, rhs: Vec<BraidGen>, n: usize, closures: usize) -> Case {
    let closures = if braid_tangle(&rhs, n, closures).is_ok() { closures } else { 0 };
    let input = format!(
        "{} = {} with {closures} closures",
        braid_line(&lhs, n),
        format!("[{}]", format_braid_word(&rhs))
    );
    Case::new(input, || {
        same_tangle(
            "braid sides",
            &braid_tangle(&lhs, n, closures)?,
            &braid_tangle(&rhs, n, closures)?,
        )
    })
}

fn fixed_r2() -> Vec<Case> {
    let mut out = Vec::new();
    for s in [Sign::Pos, Sign::Neg] {
        let (lhs, rhs) = r2_pieces(s);
        let p = piece_program(&lhs);
        out.push(Case::new(format!("R2 piece {}", program_line(&p)), || {
            let t = run_program(&p)?;
            ensure(t.gamma.omega().is_one(), || format!("ω = {}", t.gamma.omega()))?;
            ensure(t.gamma.matrix().is_identity(), || "matrix is not I".into())?;
            compare_programs("R2 sides", &p, &piece_program(&rhs))
        }));
        let g = BraidGen::new(1, s);
        out.push(braid_case(vec![g, g.inverse()], vec![], 2, 0));
    }
    out
}

fn case_r2(rng: &mut ChaCha8Rng) -> Case {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=4);
        let w1 = random_word(rng, n, 4);
        let w2 = random_word(rng, n, 4);
        let g = BraidGen::new(rng.gen_range(1..n), random_sign(rng));
        let lhs: Vec<BraidGen> = w1.iter().copied().chain([g, g.inverse()]).chain(w2.iter().copied()).collect();
        let rhs: Vec<BraidGen> = w1.into_iter().chain(w2).collect();
        let closures = rng.gen_range(0..n);
        braid_case(lhs, rhs, n, closures)
    } else {
        let (lhs, rhs) = r2_pieces(random_sign(rng));
        let (a, b) = in_context(rng, &lhs, &rhs);
        Case::new(program_line(&a), || compare_programs("R2 in context", &a, &b))
    }
}

fn fixed_r3() -> Vec<Case> {
    let mut out = Vec::new();
    let (lhs, rhs) = r3_pieces(false);
    let (a, b) = (piece_program(&lhs), piece_program(&rhs));
    out.push(Case::new(format!("R3 piece {}", program_line(&a)), || {
        let t = run_program(&a)?;
        let r = |s: &str| parse_rational(s).expect("fixture parses");
        let expected = Matrix::from_rows(
            [
                ["1", "1 - t_p1", "t_p2 - t_p2/t_p1"],
                ["0", "t_p1", "1 - t_p2"],
                ["0", "0", "t_p2/t_p1"],
            ]
            .iter()
            .map(|row| row.iter().map(|s| r(s)).collect())
            .collect(),
        );
        ensure(t.gamma.omega().is_one(), || format!("ω = {}", t.gamma.omega()))?;
        ensure(t.gamma.matrix() == &expected, || format!("matrix {:?}", t.gamma))?;
        compare_programs("R3 sides", &a, &b)
    }));
    let (lhs, rhs) = r3_pieces(true);
    let (a, b) = (piece_program(&lhs), piece_program(&rhs));
    out.push(Case::new(format!("mirrored R3 piece {}", program_line(&a)), || {
        compare_programs("mirrored R3 sides", &a, &b)
    }));
    for s in [Sign::Pos, Sign::Neg] {
        let (g1, g2) = (BraidGen::new(1, s), BraidGen::new(2, s));
        out.push(braid_case(vec![g1, g2, g1], vec![g2, g1, g2], 3, 0));
    }
    out
}

fn case_r3(rng: &mut ChaCha8Rng) -> Case {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(3..=4);
        let w1 = random_word(rng, n, 3);
        let w2 = random_word(rng, n, 3);
        let i = rng.gen_range(1..n - 1);
        let e = random_sign(rng);
        let (a, b) = (BraidGen::new(i, e), BraidGen::new(i + 1, e));
        // σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}, or the conjugation form
        // σ_i σ_{i+1} σ_i⁻¹ = σ_{i+1}⁻¹ σ_i σ_{i+1}.
        let (l, r) = if rng.gen_bool(0.5) {
            (vec![a, b, a], vec![b, a, b])
        } else {
            (vec![a, b, a.inverse()], vec![b.inverse(), a, b])
        };
        let wrap = |mid: Vec<BraidGen>| -> Vec<BraidGen> {
            w1.iter().copied().chain(mid).chain(w2.iter().copied()).collect()
        };
        let closures = rng.gen_range(0..n);
        braid_case(wrap(l), wrap(r), n, closures)
    } else {
        let (lhs, rhs) = r3_pieces(rng.gen_bool(0.5));
        let (a, b) = in_context(rng, &lhs, &rhs);
        Case::new(program_line(&a), || compare_programs("R3 in context", &a, &b))
    }
}

fn fixed_oc() -> Vec<Case> {
    let mut out = Vec::new();
    for s1 in [Sign::Pos, Sign::Neg] {
        for s2 in [Sign::Pos, Sign::Neg] {
            let (lhs, rhs) = oc_pieces(s1, s2);
            let (a, b) = (piece_program(&lhs), piece_program(&rhs));
            out.push(Case::new(format!("OC piece {}", program_line(&a)), || {
                compare_programs("OC sides", &a, &b)
            }));
        }
    }
    out
}

fn case_oc(rng: &mut ChaCha8Rng) -> Case {
    let (lhs, rhs) = oc_pieces(random_sign(rng), random_sign(rng));
    let (a, b) = in_context(rng, &lhs, &rhs);
    Case::new(program_line(&a), || compare_programs("OC in context", &a, &b))
}

// ----------------------------------------------------------- meta-monoid

fn case_meta_assoc(rng: &mut ChaCha8Rng) -> Case {
    let min = rng.gen_range(3..=4);
    let (input, t) = match random_element(rng, min) {
        Ok(x) => x,
        Err(e) => return Case::new("random element", || Err(e)),
    };
    let mut labels = t.labels().to_vec();
    labels.shuffle(rng);
    let (x, y, z) = (labels[0].clone(), labels[1].clone(), labels[2].clone());
    let w = labels[3..].first().cloned();
    let (u, v) = (lbl("u"), lbl("v"));
    let fresh = (lbl("a"), lbl("c"));
    Case::new(input, move || {
        let lhs = t.stitch(&x, &y, &u).map_err(err)?.stitch(&u, &z, &v).map_err(err)?;
        let rhs = t.stitch(&y, &z, &u).map_err(err)?.stitch(&x, &u, &v).map_err(err)?;
        same_tangle("meta-associativity", &lhs, &rhs)?;
        // left identity: e_a then m^{a,b}_c renames b to c
        let (a, c) = &fresh;
        let left = t.identity_strand(a).map_err(err)?.stitch(a, &x, c).map_err(err)?;
        same_tangle("left identity", &left, &t.rename(&x, c).map_err(err)?)?;
        // right identity: e_b then m^{a,b}_c renames a to c
        let right = t.identity_strand(a).map_err(err)?.stitch(&y, a, c).map_err(err)?;
        same_tangle("right identity", &right, &t.rename(&y, c).map_err(err)?)?;
        // e_a // η_a = Id
        let back = t.identity_strand(a).map_err(err)?.delete(a).map_err(err)?;
        same_tangle("e then delete", &back, &t)?;
        // renaming there and back
        let rr = t.rename(&z, c).map_err(err)?.rename(c, &z).map_err(err)?;
        same_tangle("rename round trip", &rr, &t)?;
        // operations on disjoint labels commute, including deletion
        if let Some(w) = &w {
            let p = t.stitch(&x, &y, &u).map_err(err)?.delete(w).map_err(err)?;
            let q = t.delete(w).map_err(err)?.stitch(&x, &y, &u).map_err(err)?;
            same_tangle("stitch and delete commute", &p, &q)?;
        }
        Ok(())
    })
}

fn case_order(rng: &mut ChaCha8Rng) -> Case {
    if rng.gen_bool(0.3) {
        // runs of stitches with chains, as the evaluator groups them
        let k = rng.gen_range(2..=4);
        let (p, _) = random_program(rng, k, 1, false);
        return Case::new(program_line(&p), move || {
            let a = p.evaluate_with(StitchMode::Sequential).map_err(err)?.tangle;
            let b = p.evaluate_with(StitchMode::Bulk).map_err(err)?.tangle;
            same_tangle("bulk vs sequential program", &a, &b)
        });
    }
    let min = rng.gen_range(4..=5);
    let (input, t) = match random_element(rng, min) {
        Ok(x) => x,
        Err(e) => return Case::new("random element", || Err(e)),
    };
    let mut labels = t.labels().to_vec();
    labels.shuffle(rng);
    let pairs = if labels.len() >= 6 && rng.gen_bool(0.5) { 3 } else { 2 };
    let a: Vec<Label> = (0..pairs).map(|i| labels[2 * i].clone()).collect();
    let b: Vec<Label> = (0..pairs).map(|i| labels[2 * i + 1].clone()).collect();
    let c: Vec<Label> = (0..pairs).map(|i| if rng.gen_bool(0.5) { a[i].clone() } else { b[i].clone() }).collect();
    let mut o1: Vec<usize> = (0..pairs).collect();
    o1.shuffle(rng);
    let mut o2 = o1.clone();
    o2.reverse();
    let input = format!("{input}; stitch {a:?} -> {b:?} as {c:?}");
    Case::new(input, move || {
        let spec = StitchSpec::new(a.clone(), b.clone(), c.clone()).map_err(err)?;
        let bulk = t.stitch_bulk(&spec).map_err(err)?;
        for order in [&o1, &o2] {
            let mut s = t.clone();
            for &i in order.iter() {
                s = s.stitch(&a[i], &b[i], &c[i]).map_err(err)?;
            }
            same_tangle(&format!("bulk vs order {order:?}"), &bulk, &s)?;
        }
        let one = StitchSpec::single(a[0].clone(), b[0].clone(), c[0].clone()).map_err(err)?;
        same_tangle(
            "single bulk stitch",
            &t.stitch_bulk(&one).map_err(err)?,
            &t.stitch(&a[0], &b[0], &c[0]).map_err(err)?,
        )
    })
}

fn column_sum_violations(g: &GammaElement) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.len();
    for j in 0..n {
        let s = (0..n).fold(RationalFn::zero(), |acc, i| acc.add(g.matrix().get(i, j)));
        if !s.is_one() {
            out.push(format!("column x_{} sums to {s}", g.labels()[j]));
        }
    }
    out
}

fn case_column_sum(rng: &mut ChaCha8Rng) -> Case {
    let k = rng.gen_range(1..=4);
    let (p, _) = random_program(rng, k, 1, true);
    Case::new(program_line(&p), move || {
        let g = run_program(&p)?.gamma;
        let bad = column_sum_violations(&g);
        ensure(bad.is_empty(), || bad.join("; "))?;
        let v = g.omega().eval_one().map_err(err)?;
        ensure(v == num_rational::BigRational::from_integer(1.into()), || format!("ω(1) = {v}"))?;
        let at_one = g.labels().iter().fold(Substitution::new(), |s, l| s.one(l.clone()));
        let m1 = g.matrix().substitute(&at_one).map_err(err)?;
        ensure(m1.is_identity(), || "M at t = 1 is not I".into())
    })
}

fn case_polynomiality(rng: &mut ChaCha8Rng) -> Case {
    let k = rng.gen_range(1..=4);
    let (p, _) = random_program(rng, k, 1, true);
    Case::new(program_line(&p), move || {
        let g = run_program(&p)?.gamma;
        ensure(g.omega().is_laurent(), || format!("ω = {} is not Laurent", g.omega()))?;
        let wm = g.scaled_matrix();
        for (i, e) in wm.entries().iter().enumerate() {
            ensure(e.is_laurent(), || {
                let n = g.len();
                format!("ω·M at (y_{}, x_{}) = {e} is not Laurent", g.labels()[i / n], g.labels()[i % n])
            })?;
        }
        Ok(())
    })
}

// ----------------------------------------------------------- braids

fn fixed_gassner() -> Vec<Case> {
    let r = |s: &str| parse_rational(s).expect("fixture parses");
    let mut out = Vec::new();
    out.push(Case::new("σ1 on 2 strands", move || {
        let s = braid_to_program(&[BraidGen::pos(1)], 2).map_err(err)?;
        let (g, m) = s.gassner().map_err(err)?;
        ensure(g.omega().is_one(), || format!("ω = {}", g.omega()))?;
        let want = Matrix::from_rows(vec![vec![r("1 - t_1"), r("1")], vec![r("t_1"), r("0")]]);
        ensure(m.matrix == want, || format!("M^ρ = {:?}", m.matrix))
    }));
    out.push(Case::new("identity braid on 3 strands", || {
        let m = StringLinkPresentation::identity(3).gassner_matrix().map_err(err)?;
        ensure(m.matrix.is_identity(), || "M^ρ is not I".into())
    }));
    out
}

fn case_gassner(rng: &mut ChaCha8Rng) -> Case {
    let (w1, n) = random_braid(rng, 4, 8);
    let w2 = random_word(rng, n, 8);
    let input = format!("{} then [{}]", braid_line(&w1, n), format_braid_word(&w2));
    Case::new(input, move || {
        let s1 = braid_to_program(&w1, n).map_err(err)?;
        let s2 = braid_to_program(&w2, n).map_err(err)?;
        let (g1, m1) = s1.gassner().map_err(err)?;
        ensure(g1.omega().is_one(), || format!("ω = {}", g1.omega()))?;
        let oracle = colored_burau_matrix(&w1, n).map_err(err)?;
        ensure(m1.matrix == oracle, || "M^ρ differs from the colored Burau product".into())?;
        let t = lbl("t");
        let single = m1
            .matrix
            .substitute(&Substitution::collapse(m1.rows.iter(), &t))
            .map_err(err)?;
        ensure(single == burau_matrix(&w1, n, &t).map_err(err)?, || "Burau specialization differs".into())?;
        // product law: the strand entering s2 at bottom position i is the one
        // leaving s1 at top position i
        let s12 = s1.compose(&s2).map_err(err)?;
        let (g12, m12) = s12.gassner().map_err(err)?;
        ensure(g12.omega().is_one(), || format!("ω of the product = {}", g12.omega()))?;
        let m2 = s2.gassner_matrix().map_err(err)?;
        let mut sub = Substitution::new();
        for (b, top) in s2.bottom.iter().zip(&s1.top) {
            sub.insert(b.clone(), Target::Label(top.clone()));
        }
        let rhs = m1.matrix.mul(&m2.matrix.substitute(&sub).map_err(err)?);
        ensure(m12.matrix == rhs, || "M^ρ of the product is not M₁^ρ₁·M₂^ρ₂".into())
    })
}

fn fixed_unitarity() -> Vec<Case> {
    let mut out = Vec::new();
    for (word, n) in [(vec![], 2usize), (vec![BraidGen::pos(1)], 2), (vec![BraidGen::neg(1)], 2)] {
        out.push(Case::new(braid_line(&word, n), move || {
            let s = braid_to_program(&word, n).map_err(err)?;
            let r = unitarity_check(&s).map_err(err)?;
            ensure(r.passed(), || r.to_string())
        }));
    }
    out
}

fn case_unitarity(rng: &mut ChaCha8Rng) -> Case {
    let (s, input) = loop {
        let (word, n) = random_braid(rng, 4, 8);
        let closures = rng.gen_range(0..=2usize.min(n - 1));
        let form = BraidForm { n, word, closures };
        if let Ok(s) = StringLinkPresentation::from_braid_form(&form) {
            let input = format!("{} with {closures} closures", braid_line(&form.word, n));
            break (s, input);
        }
    };
    Case::new(input, move || {
        let r = unitarity_check(&s).map_err(err)?;
        ensure(r.passed(), || r.to_string())
    })
}

fn case_skein(rng: &mut ChaCha8Rng) -> Case {
    let (word, n) = random_braid(rng, 4, 8);
    Case::new(braid_line(&word, n), move || {
        let r = skein_check(&word, n).map_err(err)?;
        ensure(r.passed(), || r.to_string())
    })
}

// ----------------------------------------------------------- trace

fn fixed_trace() -> Vec<Case> {
    let x = lbl("x");
    let mut out = Vec::new();
    out.push(Case::new("identity strand", move || {
        let t = Tangle::empty().identity_strand(&x).map_err(err)?;
        let v = t.trace(&[x.clone()]).map_err(err)?;
        ensure(v.is_zero(), || format!("trace = {v}"))?;
        let w = t.trace(&[]).map_err(err)?;
        ensure(w.is_one(), || format!("empty trace = {w}"))
    }));
    out
}

fn case_trace(rng: &mut ChaCha8Rng) -> Case {
    if rng.gen_bool(0.25) {
        // a long link plus a split unknotted loop has Δ = 0
        let (word, n) = random_braid(rng, 3, 6);
        let input = format!("{} plus a split loop", braid_line(&word, n));
        return Case::new(input, move || {
            let p = partial_closure(&word, n).map_err(err)?;
            let loop_label = lbl("loop");
            let mut st = vec![Statement::Identity(loop_label.clone())];
            let mut closed = vec![loop_label];
            for s in p.statements {
                match s {
                    Statement::Trace(v) => closed.extend(v),
                    other => st.push(other),
                }
            }
            st.push(Statement::Trace(closed));
            let d = link_delta(&TangleProgram::new(st)).map_err(err)?;
            ensure(d.is_zero(), || format!("Δ = {d}"))
        });
    }
    let (input, t) = match random_element(rng, 2) {
        Ok(x) => x,
        Err(e) => return Case::new("random element", || Err(e)),
    };
    let mut labels = t.labels().to_vec();
    labels.shuffle(rng);
    let (a, b) = (labels[0].clone(), labels[1].clone());
    let c = lbl("c");
    let extra: Vec<Label> = labels[2..].iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
    let input = format!("{input}; close {a} with {b}, also {extra:?}");
    Case::new(input, move || {
        let mut closed = vec![c.clone()];
        closed.extend(extra.iter().cloned());
        let x = t.stitch(&a, &b, &c).map_err(err)?.trace(&closed).map_err(err)?;
        let y = t.stitch(&b, &a, &c).map_err(err)?.trace(&closed).map_err(err)?;
        ensure(x == y, || format!("tr(m^(a,b)) = {x} but tr(m^(b,a)) = {y}"))
    })
}

// ----------------------------------------------------------- reversal

fn fixed_reversal() -> Vec<Case> {
    let (a, b) = (Label::from(1usize), Label::from(2usize));
    let mut out = Vec::new();
    for s in [Sign::Pos, Sign::Neg] {
        let (a, b) = (a.clone(), b.clone());
        out.push(Case::new(format!("reverse the under strand of X{} 1 2", if s == Sign::Pos { '+' } else { '-' }), move || {
            let x = Tangle::generator(s, &a, &b).map_err(err)?;
            let y = Tangle::generator(s.flip(), &a, &b).map_err(err)?;
            same_tangle("dS on the under strand", &x.reverse_orientation(&[b.clone()]).map_err(err)?, &y)?;
            let ra = x.reverse_orientation(&[a.clone()]).map_err(err)?;
            same_tangle("involution on the over strand", &ra.reverse_orientation(&[a]).map_err(err)?, &x)
        }));
    }
    out
}

fn case_reversal(rng: &mut ChaCha8Rng) -> Case {
    let (input, t) = match random_element(rng, 2) {
        Ok(x) => x,
        Err(e) => return Case::new("random element", || Err(e)),
    };
    let mut labels = t.labels().to_vec();
    labels.shuffle(rng);
    let (a, b) = (labels[0].clone(), labels[1].clone());
    let k = rng.gen_range(1..=labels.len().min(3));
    let subset: Vec<Label> = labels[..k].to_vec();
    let c = lbl("c");
    let input = format!("{input}; stitch {a} to {b}, reverse {subset:?}");
    Case::new(input, move || {
        let r = t.reverse_orientation(&subset).map_err(err)?;
        same_tangle("reversal involution", &r.reverse_orientation(&subset).map_err(err)?, &t)?;
        let lhs = t.stitch(&a, &b, &c).map_err(err)?.reverse_orientation(&[c.clone()]).map_err(err)?;
        let rhs = t
            .reverse_orientation(&[a.clone(), b.clone()])
            .map_err(err)?
            .stitch(&b, &a, &c)
            .map_err(err)?;
        same_tangle("stitching compatibility", &lhs, &rhs)
    })
}

// ----------------------------------------------------------- Fox-Milnor

fn fox_milnor_case(s: StringLinkPresentation, input: String) -> Case {
    Case::new(input, move || {
        let u = double(&s).map_err(err)?;
        let cert = fox_milnor_check(&u).map_err(err)?;
        ensure(cert.report.passed(), || cert.report.to_string())
    })
}

fn fixed_fox_milnor() -> Vec<Case> {
    vec![fox_milnor_case(StringLinkPresentation::identity(1), "identity on 1 strand".into())]
}

fn case_fox_milnor(rng: &mut ChaCha8Rng) -> Case {
    let s = random_pure_string_link(rng, 3, 6);
    let form = s.braid.clone().expect("braid form");
    let input = format!("double of {} with {} closures", braid_line(&form.word, form.n), form.closures);
    fox_milnor_case(s, input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("r4".parse::<Suite>().is_err());
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run(Suite::Oc, 3, 5);
        let b = run(Suite::Oc, 3, 5);
        assert_eq!(a, b);
        assert_eq!(a.random_counts().0, 5);
    }

    #[test]
    fn mismatched_sides_are_caught() {
        let (lhs, _) = r3_pieces(false);
        let (mirror, _) = r3_pieces(true);
        assert!(compare_programs("R3", &piece_program(&lhs), &piece_program(&mirror)).is_err());
        let c = braid_case(vec![BraidGen::pos(1)], vec![BraidGen::neg(1)], 2, 0);
        assert!(c.outcome.is_err());
    }

    #[test]
    fn random_programs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let k = rng.gen_range(1..=4);
            let (p, open) = random_program(&mut rng, k, 2, true);
            let ev = p.evaluate().unwrap();
            assert_eq!(ev.tangle.labels().len(), open.len(), "{p}");
        }
    }
}
