//! Acceptance run: one PASS/FAIL line per criterion. Every check is an exact
//! symbolic identity (structural equality after canonicalization, or ≐).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gamma_calculus::invariants::{link_delta, partial_closure};
use gamma_calculus::linalg::Matrix;
use gamma_calculus::polyalg::{parse_poly, parse_rational, Label, LaurentPoly, RationalFn};
use gamma_calculus::tangle::{braid_to_program, BraidGen, StitchMode, TangleProgram};
use gamma_calculus::verify::{self, Suite, SuiteResult};

const TREFOIL: &str = "X+ 1 4\nX+ 5 2\nX+ 3 6\nm 1 2 1\nm 1 3 1\nm 1 4 1\nm 1 5 1\nm 1 6 1\n";

const KNOT_7_7: &str = "\
X+ 1 2
X+ 14 4
X- 5 13
X- 3 6
X- 12 9
X+ 7 11
X+ 10 8
m 1 4 1
m 2 5 2
m 2 6 2
m 2 7 2
m 2 8 2
m 3 9 3
m 3 10 3
m 3 11 3
m 3 12 3
m 3 13 3
m 3 14 3
m 2 1 1
m 3 1 1
";

const TANGLEDEMO: &str = "\
X+ 7 2
X- 10 6
X- 5 11
X- 3 12
X+ 4 8
X+ 9 1
m 1 4 1
m 2 5 2
m 2 6 2
m 2 7 2
m 3 8 3
m 3 9 3
m 3 10 3
m 3 11 3
m 3 12 3
";

const FIGURE_EIGHT: &str =
    "X+ 1 6\nX+ 5 2\nX- 3 8\nX- 7 4\nm 1 2 1\nm 1 3 1\nm 1 4 1\nm 1 5 1\nm 1 6 1\nm 1 7 1\nm 1 8 1\n";

type Outcome = Result<String, String>;

fn r(s: &str) -> RationalFn {
    parse_rational(s).unwrap()
}

fn l(n: usize) -> Label {
    Label::from(n)
}

fn t() -> Label {
    Label::new("t").unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gamma_of(src: &str) -> Result<gamma_calculus::gamma::GammaElement, String> {
    let p = TangleProgram::parse(src).map_err(|e| e.to_string())?;
    Ok(p.evaluate().map_err(|e| e.to_string())?.tangle.gamma)
}

fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|row| row.iter().map(|s| r(s)).collect()).collect())
}

/// Run suites and require every fixed case and at least `min` random cases
/// of each to pass.
fn suites(list: &[Suite], seed: u64, min: usize) -> Outcome {
    let mut parts = Vec::new();
    for &s in list {
        let res: SuiteResult = verify::run(s, seed, min);
        let (n, ok) = res.random_counts();
        if let Some(f) = res.failures().next() {
            return Err(format!("{s}: {} failed: {} ({})", f.index.map_or("fixed case".into(), |i| format!("case {i}")), f.input, f.detail));
        }
        check(n >= min && ok == n, || format!("{s}: only {ok}/{n} random cases"))?;
        let (fixed, _) = res.fixed_counts();
        parts.push(format!("{s} {fixed} fixed + {n} random"));
    }
    Ok(parts.join(", "))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let dt = start.elapsed();
    check(dt < limit, || format!("took {dt:?}, limit {limit:?}"))?;
    Ok(format!("{out} in {:.0} ms", dt.as_secs_f64() * 1e3))
}

// Independent oracle for criterion 13: single-variable Burau matrices over
// Laurent polynomials with i64 coefficients, stored as exponent → coefficient.
type UPoly = BTreeMap<i64, i64>;

fn up(terms: &[(i64, i64)]) -> UPoly {
    let mut p = UPoly::new();
    for &(e, c) in terms {
        *p.entry(e).or_insert(0) += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn up_add(a: &UPoly, b: &UPoly, sign: i64) -> UPoly {
    let mut p = a.clone();
    for (e, c) in b {
        *p.entry(*e).or_insert(0) += sign * c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn up_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let mut p = UPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *p.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    p.retain(|_, c| *c != 0);
    p
}

/// Burau of σ_i^{±1} on n strands: block [[1−t, t],[1, 0]] for σ_i and its
/// inverse [[0, 1],[t⁻¹, 1−t⁻¹]] for σ_i⁻¹.
fn burau_gen(i: usize, positive: bool, n: usize) -> Vec<Vec<UPoly>> {
    let mut m: Vec<Vec<UPoly>> = (0..n)
        .map(|a| (0..n).map(|b| if a == b { up(&[(0, 1)]) } else { UPoly::new() }).collect())
        .collect();
    let block = if positive {
        [[up(&[(0, 1), (1, -1)]), up(&[(1, 1)])], [up(&[(0, 1)]), UPoly::new()]]
    } else {
        [[UPoly::new(), up(&[(0, 1)])], [up(&[(-1, 1)]), up(&[(0, 1), (-1, -1)])]]
    };
    for a in 0..2 {
        for b in 0..2 {
            m[i - 1 + a][i - 1 + b] = block[a][b].clone();
        }
    }
    m
}

fn burau_mul(a: &[Vec<UPoly>], b: &[Vec<UPoly>]) -> Vec<Vec<UPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(UPoly::new(), |acc, k| up_add(&acc, &up_mul(&a[i][k], &b[k][j]), 1)))
                .collect()
        })
        .collect()
}

/// det([I − Burau(β)] without its first row and column), for 3 strands.
fn burau_alexander_3(word: &[(usize, bool)]) -> UPoly {
    let mut b: Vec<Vec<UPoly>> = (0..3)
        .map(|a| (0..3).map(|c| if a == c { up(&[(0, 1)]) } else { UPoly::new() }).collect())
        .collect();
    for &(i, s) in word {
        b = burau_mul(&b, &burau_gen(i, s, 3));
    }
    let m = |i: usize, j: usize| {
        let id = if i == j { up(&[(0, 1)]) } else { UPoly::new() };
        up_add(&id, &b[i][j], -1)
    };
    up_add(&up_mul(&m(1, 1), &m(2, 2)), &up_mul(&m(1, 2), &m(2, 1)), -1)
}

fn to_laurent(p: &UPoly) -> LaurentPoly {
    let text: Vec<String> = p.iter().map(|(e, c)| format!("({c})*t^({e})")).collect();
    parse_poly(&if text.is_empty() { "0".to_string() } else { text.join(" + ") }).unwrap()
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let want = r("1 - t + t^2");
        for mode in [StitchMode::Sequential, StitchMode::Bulk] {
            let p = TangleProgram::parse(TREFOIL).map_err(|e| e.to_string())?;
            let g = p.evaluate_with(mode).map_err(|e| e.to_string())?.tangle.gamma;
            let w = g.omega_in(&t()).map_err(|e| e.to_string())?;
            check(w.doteq(&want), || format!("{mode:?}: ω = {w}"))?;
            check(g.matrix().is_identity(), || "matrix part is not [1]".into())?;
        }
        Ok("ω ≐ 1 - t + t^2 (sequential and bulk)".into())
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(2), || {
        let g = gamma_of(KNOT_7_7)?;
        let w = g.omega_in(&t()).map_err(|e| e.to_string())?;
        check(w.doteq(&r("t^-2 - 5*t^-1 + 9 - 5*t + t^2")), || format!("ω = {w}"))?;
        Ok(format!("ω = {w}"))
    })
}

fn criterion_3() -> Outcome {
    let g = gamma_of(TANGLEDEMO)?;
    check(g.labels() == [l(1), l(2), l(3)], || format!("labels {:?}", g.labels()))?;
    let scalar = r("((t_2 - 1)/t_3 + 1)*(t_3 - t_1*(t_3 - 1))");
    check(g.omega() == &scalar, || format!("ω = {}", g.omega()))?;
    let e22 = g.entry(&l(2), &l(2)).map_err(|e| e.to_string())?;
    check(e22 == &r("t_2/(t_2 + t_3 - 1)"), || format!("(y_2, x_2) = {e22}"))?;
    let scaled = mat(&[
        &[
            "-1 + t_2 + t_3",
            "-1 + t_1 + t_3 - t_1*t_3",
            "t_2*t_1 - t_2*t_1/t_3 + t_1/t_3 - 2*t_1 - t_2 + t_2/t_3 - 1/t_3 + 2",
        ],
        &["0", "-t_1*t_2 + t_1*t_2/t_3 + t_2", "-t_2*t_1 + t_2*t_1/t_3 - t_1/t_3 + t_1 + t_2 - 1"],
        &[
            "-t_2*t_1 - t_3*t_1 + t_2*t_1/t_3 - t_1/t_3 + 2*t_1",
            "t_1 - t_1/t_3",
            "-t_2*t_1 - t_3*t_1 + t_2*t_1/t_3 - t_1/t_3 + 3*t_1 + t_2 + t_3 - t_2/t_3 + 1/t_3 - 2",
        ],
    ]);
    check(g.scaled_matrix() == scaled, || format!("ω·M differs: {g:?}"))?;
    check(g.scaled_matrix().entries().iter().all(|e| e.is_laurent()), || "ω·M not Laurent".into())?;
    Ok("scalar, (y_2, x_2) entry and all nine entries of ω·M match".into())
}

fn criterion_4() -> Outcome {
    let a = gamma_of("X- 1 3\nX+ 4 2\nm 1 2 1\nm 1 3 1\nm 1 4 1")?;
    let b = gamma_of("X+ 1 3\nX- 4 2\nm 1 2 1\nm 1 3 1\nm 1 4 1")?;
    check(a.omega() == &r("2 - t_1^-1"), || format!("L: ω = {}", a.omega()))?;
    check(b.omega() == &r("2 - t_1"), || format!("L': ω = {}", b.omega()))?;
    check(a.matrix().is_identity() && b.matrix().is_identity(), || "matrix parts are not [1]".into())?;
    check(!a.omega().doteq(b.omega()), || "L and L' are ≐-equal".into())?;
    Ok(format!("L → {}, L' → {}, not ≐-equal", a.omega(), b.omega()))
}

fn criterion_5() -> Outcome {
    let g = gamma_of("X- 1 2\nm 2 1 1")?;
    check(g.labels() == [l(1)], || format!("labels {:?}", g.labels()))?;
    check(g.omega() == &r("t_1^-1"), || format!("ω = {}", g.omega()))?;
    check(g.matrix().is_identity(), || "matrix part is not [1]".into())?;
    check(!g.omega().is_one(), || "kink is trivial".into())?;
    Ok("(t_1^-1 | [1]), so R1 fails".into())
}

fn criterion_11() -> Outcome {
    // a split unknotted component: closure of the trivial 2-braid
    let d = link_delta(&partial_closure(&[], 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    check(d.is_zero(), || format!("split unlink: Δ = {d}"))?;
    let rest = suites(&[Suite::Trace], 11, 100)?;
    Ok(format!("split unlink Δ = 0; {rest}"))
}

fn criterion_13() -> Outcome {
    let g = gamma_of(FIGURE_EIGHT)?;
    let w = g.omega_in(&t()).map_err(|e| e.to_string())?;
    // the braid σ₁σ₂⁻¹σ₁σ₂⁻¹ closes to the figure-eight
    let oracle = to_laurent(&burau_alexander_3(&[(1, true), (2, false), (1, true), (2, false)]));
    let oracle_fn = RationalFn::from_poly(oracle.clone());
    check(w.doteq(&oracle_fn), || format!("program ω = {w}, oracle = {oracle}"))?;
    check(oracle_fn.doteq(&r("3 - t - t^-1")), || format!("oracle = {oracle}"))?;
    // the braid front end agrees as well
    let s = braid_to_program(
        &[BraidGen::pos(1), BraidGen::neg(2), BraidGen::pos(1), BraidGen::neg(2)],
        3,
    )
    .map_err(|e| e.to_string())?;
    let closed = s.close_rightmost().and_then(|x| x.close_rightmost()).map_err(|e| e.to_string())?;
    let wb = closed.evaluate().map_err(|e| e.to_string())?.omega_in(&t()).map_err(|e| e.to_string())?;
    check(wb.doteq(&oracle_fn), || format!("braid closure ω = {wb}"))?;
    Ok(format!("ω = {w} ≐ Burau oracle {oracle}"))
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 trefoil word gives ω ≐ 1-t+t^2", Box::new(criterion_1)),
        ("2 7_7 program gives ≐ t^-2-5t^-1+9-5t+t^2", Box::new(criterion_2)),
        ("3 tangle example scalar, matrix entry and ω·M", Box::new(criterion_3)),
        ("4 long w-knots L and L' differ", Box::new(criterion_4)),
        ("5 R1 kink gives (t_1^-1 | [1])", Box::new(criterion_5)),
        (
            "6 R2, R3, OC, meta-associativity and identities",
            Box::new(|| suites(&[Suite::R2, Suite::R3, Suite::Oc, Suite::MetaAssoc], 6, 100)),
        ),
        (
            "7 stitch-order independence and bulk stitching",
            Box::new(|| suites(&[Suite::OrderIndependence], 7, 100)),
        ),
        (
            "8 column sums and Laurent ω, ω·M",
            Box::new(|| suites(&[Suite::ColumnSum, Suite::Polynomiality], 8, 100)),
        ),
        ("9 Gassner matrices of braids", Box::new(|| suites(&[Suite::Gassner], 9, 100))),
        ("10 unitarity of string links", Box::new(|| suites(&[Suite::Unitarity], 10, 100))),
        ("11 trace well-definedness and split components", Box::new(criterion_11)),
        ("12 Alexander-Conway skein relation", Box::new(|| suites(&[Suite::Skein], 12, 100))),
        ("13 figure-eight against the Burau oracle", Box::new(criterion_13)),
        ("14 Fox-Milnor on doubled string links", Box::new(|| suites(&[Suite::FoxMilnor], 14, 30))),
        ("15 orientation reversal", Box::new(|| suites(&[Suite::Reversal], 15, 100))),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t0 = Instant::now();
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{:.2}s]", t0.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
