use gamma_calculus::invariants::{
    alexander_braid_closure, alexander_long_knot, colored_burau_matrix, fox_milnor_check,
    link_delta, partial_closure, skein_check, unit_normal, unitarity_check,
};
use gamma_calculus::polyalg::{parse_poly, LaurentPoly};
use gamma_calculus::tangle::{
    braid_to_program, double, parse_braid_word, BraidForm, StringLinkPresentation,
};

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

fn w(s: &str) -> Vec<gamma_calculus::tangle::BraidGen> {
    parse_braid_word(s).unwrap()
}

#[test]
fn braid_closure_matches_long_knot() {
    for (word, n, expected) in [
        ("1 1 1", 2, "1 - t + t^2"),
        ("1 -2 1 -2", 3, "-1 + 3*t - t^2"),
        ("1 1 1 1 1", 2, "1 - t + t^2 - t^3 + t^4"),
    ] {
        let d = alexander_braid_closure(&w(word), n).unwrap();
        assert_eq!(unit_normal(&d), unit_normal(&p(expected)), "{word}");
        let s = StringLinkPresentation::from_braid_form(&BraidForm {
            n,
            word: w(word),
            closures: n - 1,
        })
        .unwrap();
        let long = alexander_long_knot(&s.program).unwrap();
        assert_eq!(unit_normal(&long), unit_normal(&d), "{word}");
    }
}

#[test]
fn gassner_equals_colored_burau() {
    for (word, n) in [("1", 2), ("1 -2", 3), ("2 -1 2 1 -3", 4), ("-1 -1 2", 3)] {
        let s = braid_to_program(&w(word), n).unwrap();
        let g = s.gassner_matrix().unwrap();
        assert_eq!(g.matrix, colored_burau_matrix(&w(word), n).unwrap(), "{word}");
    }
}

#[test]
fn hopf_pattern_and_split_unlink() {
    // Closure of σ₁² is the Hopf link; of the identity on 2 strands, the unlink.
    // The Hopf pattern: L+ = σ₁², L− = σ₁σ₁⁻¹, L0 = σ₁, all partially closed.
    let d = |s: &str| link_delta(&partial_closure(&w(s), 2).unwrap()).unwrap();
    let factor = p("s^-1 - s");
    assert_eq!(&d("1 1") - &d("1 -1"), &factor * &d("1"));
    // A split trivial component kills Δ.
    assert!(d("").is_zero());
    assert!(d("1 -1").is_zero());
}

#[test]
fn skein_on_small_braids() {
    for (word, n) in [("", 2), ("1", 2), ("1 -2 1", 3), ("2 2 -1", 3), ("1 2 3 -2", 4)] {
        let r = skein_check(&w(word), n).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn unitarity_on_small_string_links() {
    for (word, n, c) in [("1", 2, 0), ("1 -2 1", 3, 0), ("1 1 -2", 3, 1), ("2 -1 -1 3", 4, 2)] {
        let s = StringLinkPresentation::from_braid_form(&BraidForm { n, word: w(word), closures: c })
            .unwrap();
        let r = unitarity_check(&s).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn doubled_long_trefoil_is_trivial() {
    // With one component both closures cap the same pair, so κ retracts.
    let s = StringLinkPresentation::from_braid_form(&BraidForm { n: 2, word: w("1 1 1"), closures: 1 })
        .unwrap();
    let c = fox_milnor_check(&double(&s).unwrap()).unwrap();
    assert!(c.report.passed(), "{}", c.report);
    assert_eq!(c.delta, LaurentPoly::one());
}

#[test]
fn doubled_string_links_are_ribbon() {
    for (word, n, closures) in [("1 1", 2, 0), ("1 1 1 1", 2, 0), ("1 -2 1 1 -2 1", 3, 0), ("2 2 2", 3, 1), ("1 1 2 2 2", 3, 1)] {
        let s = StringLinkPresentation::from_braid_form(&BraidForm { n, word: w(word), closures })
            .unwrap();
        if !s.is_pure() {
            continue;
        }
        let c = fox_milnor_check(&double(&s).unwrap()).unwrap();
        assert!(c.report.passed(), "{}", c.report);
        println!("{word}: f = {}, delta = {}", c.f, c.delta);
        // A knot's Alexander polynomial is ±1 at t = 1.
        let at_one = c.delta.eval_one();
        assert_eq!((&at_one * &at_one).to_string(), "1", "{}", c.delta);
    }
}
