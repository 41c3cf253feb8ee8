//! Worked examples with published values, plus values from independent
//! hand or matrix computations.

use gamma_calculus::gamma::{GammaElement, Sign, Tangle};
use gamma_calculus::linalg::Matrix;
use gamma_calculus::polyalg::{parse_rational, Label, RationalFn};
use gamma_calculus::tangle::{braid_to_program, BraidGen, StitchMode, TangleProgram};

fn r(s: &str) -> RationalFn {
    parse_rational(s).unwrap()
}

fn l(n: usize) -> Label {
    Label::from(n)
}

fn t() -> Label {
    Label::new("t").unwrap()
}

fn run(src: &str) -> Tangle {
    TangleProgram::parse(src).unwrap().evaluate().unwrap().tangle
}

fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|row| row.iter().map(|s| r(s)).collect()).collect())
}

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

#[test]
fn trefoil_alexander() {
    for mode in [StitchMode::Sequential, StitchMode::Bulk] {
        let ev = TangleProgram::parse(TREFOIL).unwrap().evaluate_with(mode).unwrap();
        let g = &ev.tangle.gamma;
        assert_eq!(g.labels(), &[l(1)]);
        assert!(g.matrix().is_identity());
        assert!(g.omega_in(&t()).unwrap().doteq(&r("1 - t + t^2")));
    }
}

#[test]
fn seven_seven_alexander() {
    let g = run(KNOT_7_7).gamma;
    assert!(g.matrix().is_identity());
    let w = g.omega_in(&t()).unwrap();
    assert!(w.doteq(&r("t^-2 - 5*t^-1 + 9 - 5*t + t^2")), "{w}");
}

#[test]
fn tangledemo_values() {
    let g = run(TANGLEDEMO).gamma;
    assert_eq!(g.labels(), &[l(1), l(2), l(3)]);
    assert_eq!(g.omega(), &r("((t_2 - 1)/t_3 + 1)*(t_3 - t_1*(t_3 - 1))"));
    let expected = mat(&[
        &[
            "-t_3/(t_3*t_1 - t_1 - t_3)",
            "(t_1 - 1)*(t_3 - 1)*t_3/((t_2 + t_3 - 1)*(t_3*t_1 - t_1 - t_3))",
            "-(t_1 - 1)*(t_3*t_2 - t_2 - 2*t_3 + 1)/((t_2 + t_3 - 1)*(t_3*t_1 - t_1 - t_3))",
        ],
        &["0", "t_2/(t_2 + t_3 - 1)", "(t_2 - 1)/(t_2 + t_3 - 1)"],
        &[
            "t_1*(t_3 - 1)/(t_3*t_1 - t_1 - t_3)",
            "-t_1*(t_3 - 1)/((t_2 + t_3 - 1)*(t_3*t_1 - t_1 - t_3))",
            "(t_1*t_3^2 - t_3^2 - 3*t_1*t_3 + t_1*t_2*t_3 - t_2*t_3 + 2*t_3 + t_1 - t_1*t_2 + t_2 - 1)/((t_2 + t_3 - 1)*(t_3*t_1 - t_1 - t_3))",
        ],
    ]);
    assert_eq!(g.matrix(), &expected);
    assert_eq!(g.entry(&l(2), &l(2)).unwrap(), &r("t_2/(t_2 + t_3 - 1)"));
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
    assert_eq!(g.scaled_matrix(), scaled);
    assert!(g.validate(true).is_empty(), "{:?}", g.validate(true));
}

#[test]
fn tangledemo_sigma() {
    let s = run(TANGLEDEMO).sigma;
    let m = |x: &str| r(x);
    let get = |n: usize| RationalFn::monomial(s.get(&l(n)).unwrap().clone());
    assert_eq!(get(1), m("t_3"));
    assert_eq!(get(2), m("t_2/t_3"));
    assert_eq!(get(3), m("t_1/(t_2*t_3)"));
}

#[test]
fn long_versus_closed() {
    let a = run("X- 1 3\nX+ 4 2\nm 1 2 1\nm 1 3 1\nm 1 4 1").gamma;
    let b = run("X+ 1 3\nX- 4 2\nm 1 2 1\nm 1 3 1\nm 1 4 1").gamma;
    assert_eq!(a.omega(), &r("2 - t_1^-1"));
    assert_eq!(b.omega(), &r("2 - t_1"));
    assert!(a.matrix().is_identity() && b.matrix().is_identity());
    assert!(!a.omega().doteq(b.omega()));
}

#[test]
fn r1_kink() {
    let g = run("X- 1 2\nm 2 1 1").gamma;
    assert_eq!(g.omega(), &r("t_1^-1"));
    assert!(g.matrix().is_identity());
    assert_eq!(g.labels(), &[l(1)]);
}

#[test]
fn r3_both_sides() {
    let lhs = run("X+ 1 4\nX+ 2 5\nX- 6 3\nm 1 6 1\nm 2 4 2\nm 3 5 3").gamma;
    let rhs = run("X- 1 5\nX+ 4 3\nX+ 6 2\nm 1 6 1\nm 2 4 2\nm 3 5 3").gamma;
    let expected = mat(&[
        &["1", "1 - t_1", "t_2 - t_2/t_1"],
        &["0", "t_1", "1 - t_2"],
        &["0", "0", "t_2/t_1"],
    ]);
    assert!(lhs.omega().is_one());
    assert_eq!(lhs.matrix(), &expected);
    assert_eq!(lhs, rhs);
}

#[test]
fn r2_is_identity() {
    let g = run("X+ 1 3\nX- 4 2\nm 1 4 1\nm 3 2 2").gamma;
    assert_eq!(g.labels(), &[l(1), l(2)]);
    assert!(g.omega().is_one());
    assert!(g.matrix().is_identity());
}

#[test]
fn overcrossings_commute() {
    for (sx, sy) in [(Sign::Pos, Sign::Pos), (Sign::Pos, Sign::Neg), (Sign::Neg, Sign::Neg)] {
        let mk = |first: (&str, Sign), second: (&str, Sign)| {
            let z1 = Label::new("z1").unwrap();
            let z2 = Label::new("z2").unwrap();
            let a = Tangle::generator(first.1, &z1, &Label::new(first.0).unwrap()).unwrap();
            let b = Tangle::generator(second.1, &z2, &Label::new(second.0).unwrap()).unwrap();
            a.disjoint_union(&b)
                .unwrap()
                .stitch(&z1, &z2, &Label::new("z").unwrap())
                .unwrap()
        };
        assert_eq!(mk(("x", sx), ("y", sy)), mk(("y", sy), ("x", sx)));
    }
}

#[test]
fn figure_eight_word() {
    let g = run("X+ 1 6\nX+ 5 2\nX- 3 8\nX- 7 4\nm 1 2 1\nm 1 3 1\nm 1 4 1\nm 1 5 1\nm 1 6 1\nm 1 7 1\nm 1 8 1").gamma;
    assert!(g.omega_in(&t()).unwrap().doteq(&r("3 - t - t^-1")));
}

#[test]
fn gassner_generators() {
    let s = braid_to_program(&[BraidGen::pos(1)], 2).unwrap();
    let (g, m) = s.gassner().unwrap();
    assert!(g.omega().is_one());
    assert_eq!(m.matrix, mat(&[&["1 - t_1", "1"], &["t_1", "0"]]));

    let s = braid_to_program(&[BraidGen::pos(1), BraidGen::neg(2)], 3).unwrap();
    let (g, m) = s.gassner().unwrap();
    assert!(g.omega().is_one());
    assert_eq!(
        m.matrix,
        mat(&[
            &["1 - t_1", "0", "t_3^-1"],
            &["t_1", "0", "0"],
            &["0", "1", "1 - t_3^-1"],
        ])
    );
}

#[test]
fn single_strand_reversal_matches_negative_crossing() {
    let a = l(1);
    let b = l(2);
    let pos = Tangle::generator(Sign::Pos, &a, &b).unwrap();
    let neg = Tangle::generator(Sign::Neg, &a, &b).unwrap();
    assert_eq!(pos.reverse_orientation(&[b.clone()]).unwrap(), neg);
    assert_eq!(neg.reverse_orientation(&[b.clone()]).unwrap(), pos);
    // reversing the over strand instead
    let ra = pos.reverse_orientation(&[a.clone()]).unwrap();
    assert_eq!(ra.reverse_orientation(&[a]).unwrap(), pos);
}

#[test]
fn empty_element_is_union_unit() {
    let g = GammaElement::generator(Sign::Pos, &l(1), &l(6)).unwrap();
    assert_eq!(g.disjoint_union(&GammaElement::empty()).unwrap(), g);
}
