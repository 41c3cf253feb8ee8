use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const TREFOIL: &str = "X+ 1 4\nX+ 5 2\nX+ 3 6\nm 1 2 1\nm 1 3 1\nm 1 4 1\nm 1 5 1\nm 1 6 1\n";

fn gamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

#[test]
fn eval_file_pretty_and_structured() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(TREFOIL.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();

    let o = gamma(&["eval", path, "--pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 - t_1 + t_1^2 | x_1\ny_1             | 1\n");

    let o = gamma(&["eval", path, "--structured"]);
    let r = records(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["kind"], "gamma");
    assert_eq!(r[0]["labels"], serde_json::json!(["1"]));
    assert_eq!(r[0]["omega"], "1 - t_1 + t_1^2");
    assert_eq!(r[0]["entries"], serde_json::json!([["1"]]));
}

#[test]
fn structured_dump_round_trips() {
    let o = gamma(&["eval", "-e", "X+ 1 2\nX- 3 4\nm 2 3 2", "--structured"]);
    let r = records(&o);
    let dump: gamma_calculus::gamma::GammaDump = serde_json::from_value(r[0].clone()).unwrap();
    let g = gamma_calculus::gamma::GammaElement::from_dump(&dump).unwrap();
    assert_eq!(g.dump(), dump);
}

#[test]
fn bulk_and_var_flags() {
    let a = gamma(&["eval", "-e", TREFOIL]);
    let b = gamma(&["eval", "-e", TREFOIL, "--bulk"]);
    assert_eq!(stdout(&a), stdout(&b));
    let o = gamma(&["eval", "-e", "X+ 1 2", "--var", "t"]);
    assert!(stdout(&o).contains("1 - t"), "{}", stdout(&o));
    assert!(!stdout(&o).contains("t_1"));
}

#[test]
fn alexander_from_program_and_braid() {
    let o = gamma(&["alexander", "-e", TREFOIL]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("normalized: 1 - t + t^2"));
    let o = gamma(&["alexander", "--braid", "1 -2 1 -2", "--strands", "3", "--structured"]);
    let r = records(&o);
    assert_eq!(r[0]["normalized"], "1 - 3*t + t^2");
}

#[test]
fn link_delta_of_split_unlink_is_zero() {
    let o = gamma(&["link-delta", "--braid", "1 -1", "--strands", "2", "--structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o)[0]["omega"], "0");
}

#[test]
fn gassner_of_sigma_one() {
    let o = gamma(&["gassner", "--braid", "1", "--strands", "2", "--structured"]);
    let r = records(&o);
    assert_eq!(r[0]["omega"], "1");
    assert_eq!(r[0]["entries"], serde_json::json!([["1 - t_1", "1"], ["t_1", "0"]]));
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    let o = gamma(&["verify", "r3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = gamma(&["verify", "skein", "--cases", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("skein: fixed 0/0, random 50/50 (seed 7)\n"));
    let a = gamma(&["verify", "meta-assoc", "--cases", "10", "--seed", "3", "--structured"]);
    let b = gamma(&["verify", "meta-assoc", "--cases", "10", "--seed", "3", "--structured"]);
    assert_eq!(a.stdout, b.stdout);
    let r = records(&a);
    assert_eq!(r.len(), 11);
    assert_eq!(r[10]["kind"], "summary");
    assert_eq!(r[10]["verdict"], "pass");
}

#[test]
fn ribbon_check_passes_and_reports_failures() {
    let o = gamma(&["ribbon-check", "--braid", "1 1", "--strands", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: pass"));
    // A long trefoil next to a reversed trivial strand: capping the pair
    // leaves the trefoil, so the τ-closure is not trivial.
    let program = format!("{TREFOIL}e 2\nrev 2\n");
    let o = gamma(&["ribbon-check", "--n", "1", "-e", &program, "--structured"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert_eq!(records(&o)[0]["verdict"], "fail");
}

#[test]
fn bad_input_exits_two() {
    let o = gamma(&["eval", "-e", "m 1 1 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(gamma(&["verify", "r4"]).status.code(), Some(2));
    assert_eq!(gamma(&["verify", "r2", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(gamma(&["eval", "/nonexistent/file.gma"]).status.code(), Some(2));
    assert_eq!(gamma(&["eval"]).status.code(), Some(2));
}
