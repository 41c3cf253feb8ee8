use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use gamma_calculus::invariants::{
    alexander_braid_closure, alexander_long_knot, fox_milnor_check, link_delta, partial_closure,
    unit_normal, InvariantError,
};
use gamma_calculus::linalg::Matrix;
use gamma_calculus::polyalg::{Label, RationalFn, Substitution};
use gamma_calculus::tangle::{
    double, parse_braid_word, BraidForm, BraidGen, StitchMode, StringLinkPresentation,
    TangleProgram, UpDownTangle,
};
use gamma_calculus::verify;

use crate::{BraidInput, Cli, Command, ProgramInput};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn read_program(input: &ProgramInput) -> Result<TangleProgram> {
    let text = match (&input.file, &input.program) {
        (_, Some(p)) => p.clone(),
        (Some(f), None) if f.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
        (Some(f), None) => {
            std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?
        }
        (None, None) => bail!("no program given: pass a file or --program"),
    };
    Ok(TangleProgram::parse(&text)?)
}

fn read_braid(b: &BraidInput) -> Result<Option<(Vec<BraidGen>, usize)>> {
    let Some(word) = &b.braid else {
        return Ok(None);
    };
    let word = parse_braid_word(word)?;
    let n = match b.strands {
        Some(n) => n,
        None => word.iter().map(|g| g.index + 1).max().unwrap_or(1),
    };
    Ok(Some((word, n)))
}

fn has_program(input: &ProgramInput) -> bool {
    input.file.is_some() || input.program.is_some()
}

fn collapse_var(cli: &Cli) -> Result<Option<Label>> {
    cli.var
        .as_deref()
        .map(|v| Label::new(v).map_err(|e| anyhow!("--var: {e}")))
        .transpose()
}

fn collapse(f: &RationalFn, to: &Option<Label>) -> Result<RationalFn> {
    match to {
        None => Ok(f.clone()),
        Some(t) => Ok(f.substitute(&Substitution::collapse(f.labels().iter(), t))?),
    }
}

fn bordered(corner: &str, rows: &[String], cols: &[String], m: &Matrix) -> String {
    let mut cells = vec![std::iter::once(corner.to_string())
        .chain(cols.iter().map(|c| format!("x_{c}")))
        .collect::<Vec<_>>()];
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![format!("y_{r}")];
        row.extend(m.row(i).iter().map(|e| e.to_string()));
        cells.push(row);
    }
    let widths: Vec<usize> = (0..=cols.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &cells {
        let mut l = format!("{:<w$} |", r[0], w = widths[0]);
        for j in 1..r.len() {
            l.push_str(&format!(" {:<w$}", r[j], w = widths[j]));
        }
        out.push_str(l.trim_end());
        out.push('\n');
    }
    out
}

pub fn run(cli: &Cli) -> Result<Output> {
    let structured = cli.structured;
    let var = collapse_var(cli)?;
    match &cli.command {
        Command::Eval { input, bulk } => {
            let p = read_program(input)?;
            let mode = if *bulk { StitchMode::Bulk } else { StitchMode::Sequential };
            let ev = p.evaluate_with(mode)?;
            if ev.closed.is_empty() {
                let mut g = ev.tangle.gamma.clone();
                if let Some(t) = &var {
                    g = g.substitute(&Substitution::collapse(g.labels().iter(), t))?;
                }
                Ok(Output::ok(if structured {
                    line(&serde_json::to_value(g.dump())?)
                } else {
                    g.render()
                }))
            } else {
                let scalar = collapse(&ev.scalar()?, &var)?;
                let open: Vec<String> = ev.open_labels().iter().map(|l| l.to_string()).collect();
                let closed: Vec<String> = ev.closed.iter().map(|l| l.to_string()).collect();
                Ok(Output::ok(if structured {
                    line(&json!({
                        "kind": "trace",
                        "labels": open,
                        "closed": closed,
                        "omega": scalar.to_string(),
                        "entries": [],
                    }))
                } else {
                    format!(
                        "open: {}\nclosed: {}\nω·det(I-α) = {scalar}\n",
                        open.join(" "),
                        closed.join(" ")
                    )
                }))
            }
        }
        Command::Alexander { input, braid } => {
            let (source, p) = match read_braid(braid)? {
                Some((w, n)) if !has_program(input) => ("braid closure", alexander_braid_closure(&w, n)?),
                Some(_) => bail!("give either a program or --braid, not both"),
                None => ("long knot", alexander_long_knot(&read_program(input)?)?),
            };
            let normal = unit_normal(&p);
            Ok(Output::ok(if structured {
                line(&json!({
                    "kind": "alexander",
                    "source": source,
                    "labels": ["t"],
                    "omega": p.to_string(),
                    "normalized": normal.to_string(),
                    "entries": [],
                }))
            } else {
                format!("Δ(t) = {p}\nnormalized: {normal}\n")
            }))
        }
        Command::LinkDelta { input, braid } => {
            let program = match read_braid(braid)? {
                Some((w, n)) if !has_program(input) => partial_closure(&w, n)?,
                Some(_) => bail!("give either a program or --braid, not both"),
                None => read_program(input)?,
            };
            let d = link_delta(&program)?;
            Ok(Output::ok(if structured {
                line(&json!({
                    "kind": "link-delta",
                    "labels": ["s"],
                    "writhe": program.writhe(),
                    "omega": d.to_string(),
                    "entries": [],
                }))
            } else {
                format!("Δ_L(s) = {d}\n")
            }))
        }
        Command::Gassner { braid, closures } => {
            let (word, n) = read_braid(braid)?.ok_or_else(|| anyhow!("--braid is required"))?;
            let s = StringLinkPresentation::from_braid_form(&BraidForm {
                n,
                word,
                closures: *closures,
            })?;
            let (g, m) = s.gassner()?;
            let mut matrix = m.matrix.clone();
            let mut omega = g.omega().clone();
            if let Some(t) = &var {
                let sub = Substitution::collapse(g.labels().iter(), t);
                matrix = matrix.substitute(&sub)?;
                omega = omega.substitute(&sub)?;
            }
            let rows: Vec<String> = m.rows.iter().map(|l| l.to_string()).collect();
            let cols: Vec<String> = m.cols.iter().map(|l| l.to_string()).collect();
            Ok(Output::ok(if structured {
                let entries: Vec<Vec<String>> = (0..rows.len())
                    .map(|i| matrix.row(i).iter().map(|e| e.to_string()).collect())
                    .collect();
                line(&json!({
                    "kind": "gassner",
                    "labels": rows,
                    "columns": cols,
                    "omega": omega.to_string(),
                    "entries": entries,
                }))
            } else {
                bordered(&omega.to_string(), &rows, &cols, &matrix)
            }))
        }
        Command::RibbonCheck {
            input,
            n,
            braid,
            closures,
        } => {
            let u = match (read_braid(braid)?, has_program(input)) {
                (Some((word, k)), false) => {
                    let s = StringLinkPresentation::from_braid_form(&BraidForm {
                        n: k,
                        word,
                        closures: *closures,
                    })?;
                    double(&s)?
                }
                (Some(_), true) => bail!("give either a program or --braid, not both"),
                (None, _) => {
                    let n = n.ok_or_else(|| anyhow!("--n is required with an up-down program"))?;
                    UpDownTangle::new(read_program(input)?, n)?
                }
            };
            ribbon(&u, structured)
        }
        Command::Verify { suite, seed, cases } => {
            let r = verify::run(*suite, *seed, *cases as usize);
            let mut text = String::new();
            for c in &r.cases {
                if structured {
                    text.push_str(&line(&json!({
                        "kind": "case",
                        "suite": r.suite,
                        "index": c.index,
                        "input": c.input,
                        "pass": c.pass,
                        "detail": c.detail,
                    })));
                } else {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    let which = c.index.map_or("fixed".to_string(), |i| format!("case {i}"));
                    text.push_str(&format!("[{tag}] {which}: {}\n", c.input));
                    if !c.pass {
                        text.push_str(&format!("       {}\n", c.detail));
                    }
                }
            }
            if structured {
                let (f, fo) = r.fixed_counts();
                let (n, no) = r.random_counts();
                text.push_str(&line(&json!({
                    "kind": "summary",
                    "suite": r.suite,
                    "seed": r.seed,
                    "fixed": {"cases": f, "passed": fo},
                    "random": {"cases": n, "passed": no},
                    "verdict": if r.passed() { "pass" } else { "fail" },
                })));
            } else {
                text.push_str(&format!("{r}\n"));
            }
            Ok(Output {
                text,
                passed: r.passed(),
            })
        }
    }
}

fn ribbon(u: &UpDownTangle, structured: bool) -> Result<Output> {
    match fox_milnor_check(u) {
        Ok(cert) => {
            let passed = cert.report.passed();
            let text = if structured {
                let mut v = cert.report.to_json();
                v["kind"] = json!("ribbon-certificate");
                v["n"] = json!(cert.n);
                v["f"] = json!(cert.f.to_string());
                v["delta"] = json!(cert.delta.to_string());
                line(&v)
            } else {
                format!("{}\nf(t) = {}\nΔ(t) = {}\n", cert.report, cert.f, cert.delta)
            };
            Ok(Output { text, passed })
        }
        Err(InvariantError::NotRibbonWitness { scalar, block }) => {
            let text = if structured {
                line(&json!({
                    "kind": "ribbon-certificate",
                    "verdict": "fail",
                    "reason": "τ-closure is not trivial",
                    "scalar": scalar,
                    "block": block,
                }))
            } else {
                format!("τ-closure is not trivial\n  scalar: {scalar}\n  block: {block}\nverdict: fail\n")
            };
            Ok(Output {
                text,
                passed: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}
