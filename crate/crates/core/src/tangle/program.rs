use std::collections::BTreeSet;
use std::fmt;

use super::TangleError;
use crate::gamma::Sign;
use crate::polyalg::Label;

/// One line of a tangle program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    /// `X+ a b` / `X- a b`: crossing with `over` passing over `under`.
    Crossing { sign: Sign, over: Label, under: Label },
    /// `e a`
    Identity(Label),
    /// `m a b c`: head of `a` to tail of `b`, result named `c`.
    Stitch(Label, Label, Label),
    /// `del a`
    Delete(Label),
    /// `ren a b`
    Rename(Label, Label),
    /// `rev a b …`
    Reverse(Vec<Label>),
    /// `tr a b …`: close the listed strands into loops. Only allowed at the end.
    Trace(Vec<Label>),
}

impl Statement {
    pub fn labels(&self) -> Vec<&Label> {
        match self {
            Statement::Crossing { over, under, .. } => vec![over, under],
            Statement::Identity(a) | Statement::Delete(a) => vec![a],
            Statement::Stitch(a, b, c) => vec![a, b, c],
            Statement::Rename(a, b) => vec![a, b],
            Statement::Reverse(v) | Statement::Trace(v) => v.iter().collect(),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &Vec<Label>| {
            v.iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Statement::Crossing { sign, over, under } => {
                let s = if *sign == Sign::Pos { '+' } else { '-' };
                write!(f, "X{s} {over} {under}")
            }
            Statement::Identity(a) => write!(f, "e {a}"),
            Statement::Stitch(a, b, c) => write!(f, "m {a} {b} {c}"),
            Statement::Delete(a) => write!(f, "del {a}"),
            Statement::Rename(a, b) => write!(f, "ren {a} {b}"),
            Statement::Reverse(v) => write!(f, "rev {}", join(v)),
            Statement::Trace(v) => write!(f, "tr {}", join(v)),
        }
    }
}

/// A parsed tangle program: a word in crossings and meta-monoid operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TangleProgram {
    pub statements: Vec<Statement>,
}

impl fmt::Display for TangleProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for TangleProgram {
    type Err = TangleError;
    fn from_str(s: &str) -> Result<Self, TangleError> {
        TangleProgram::parse(s)
    }
}

impl TangleProgram {
    pub fn new(statements: Vec<Statement>) -> Self {
        TangleProgram { statements }
    }

    pub fn push(&mut self, s: Statement) {
        self.statements.push(s);
    }

    /// Every label the program mentions.
    pub fn mentioned_labels(&self) -> BTreeSet<Label> {
        self.statements
            .iter()
            .flat_map(|s| s.labels().into_iter().cloned())
            .collect()
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.statements
            .iter()
            .map(|s| match s {
                Statement::Crossing { sign, .. } => sign.exponent(),
                _ => 0,
            })
            .sum()
    }

    /// Parse and check label references against the running label set.
    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let mut statements = Vec::new();
        let mut positions = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            let code = match line.find('#') {
                Some(k) => &line[..k],
                None => line,
            };
            let mut toks: Vec<(usize, &str)> = Vec::new();
            let mut col = 0;
            for piece in code.split(|c: char| c.is_ascii_whitespace()) {
                if !piece.is_empty() {
                    toks.push((col + 1, piece));
                }
                col += piece.len() + 1;
            }
            if toks.is_empty() {
                continue;
            }
            let line_no = ln + 1;
            let syntax = |col: usize, msg: String| TangleError::Syntax {
                line: line_no,
                col,
                msg,
            };
            let label = |(col, tok): (usize, &str)| {
                Label::new(tok).map_err(|_| syntax(col, format!("invalid label {tok:?}")))
            };
            let (kcol, kw) = toks[0];
            let args = &toks[1..];
            let want = |n: usize| -> Result<(), TangleError> {
                if args.len() != n {
                    Err(syntax(
                        kcol,
                        format!("`{kw}` takes {n} labels, got {}", args.len()),
                    ))
                } else {
                    Ok(())
                }
            };
            let st = match kw {
                "X+" | "X-" => {
                    want(2)?;
                    let sign = if kw == "X+" { Sign::Pos } else { Sign::Neg };
                    Statement::Crossing {
                        sign,
                        over: label(args[0])?,
                        under: label(args[1])?,
                    }
                }
                "e" => {
                    want(1)?;
                    Statement::Identity(label(args[0])?)
                }
                "m" => {
                    want(3)?;
                    Statement::Stitch(label(args[0])?, label(args[1])?, label(args[2])?)
                }
                "del" => {
                    want(1)?;
                    Statement::Delete(label(args[0])?)
                }
                "ren" => {
                    want(2)?;
                    Statement::Rename(label(args[0])?, label(args[1])?)
                }
                "rev" | "tr" => {
                    if args.is_empty() {
                        return Err(syntax(kcol, format!("`{kw}` needs at least one label")));
                    }
                    let v = args.iter().map(|&a| label(a)).collect::<Result<Vec<_>, _>>()?;
                    if kw == "rev" {
                        Statement::Reverse(v)
                    } else {
                        Statement::Trace(v)
                    }
                }
                other => return Err(syntax(kcol, format!("unknown statement `{other}`"))),
            };
            let cols: Vec<usize> = args.iter().map(|(c, _)| *c).collect();
            positions.push((line_no, kcol, cols));
            statements.push(st);
        }
        let p = TangleProgram { statements };
        p.check_with_positions(&positions)?;
        Ok(p)
    }

    /// Check label references; errors use statement indices as line numbers.
    pub fn check(&self) -> Result<(), TangleError> {
        let positions: Vec<(usize, usize, Vec<usize>)> = self
            .statements
            .iter()
            .enumerate()
            .map(|(i, s)| (i + 1, 1, vec![1; s.labels().len()]))
            .collect();
        self.check_with_positions(&positions)
    }

    fn check_with_positions(&self, pos: &[(usize, usize, Vec<usize>)]) -> Result<(), TangleError> {
        let mut live: BTreeSet<Label> = BTreeSet::new();
        let mut tracing = false;
        for (st, (line, kcol, cols)) in self.statements.iter().zip(pos) {
            let col = |k: usize| cols.get(k).copied().unwrap_or(*kcol);
            let unknown = |k: usize, l: &Label| TangleError::UnknownLabelReference {
                line: *line,
                col: col(k),
                label: l.clone(),
            };
            let dup = |k: usize, l: &Label| TangleError::DuplicateLabel {
                line: *line,
                col: col(k),
                label: l.clone(),
            };
            if tracing && !matches!(st, Statement::Trace(_)) {
                return Err(TangleError::Syntax {
                    line: *line,
                    col: *kcol,
                    msg: "only `tr` statements may follow a `tr` statement".into(),
                });
            }
            match st {
                Statement::Crossing { over, under, .. } => {
                    if over == under {
                        return Err(TangleError::Syntax {
                            line: *line,
                            col: col(1),
                            msg: "a crossing needs two distinct labels".into(),
                        });
                    }
                    for (k, l) in [over, under].into_iter().enumerate() {
                        if !live.insert(l.clone()) {
                            return Err(dup(k, l));
                        }
                    }
                }
                Statement::Identity(a) => {
                    if !live.insert(a.clone()) {
                        return Err(dup(0, a));
                    }
                }
                Statement::Stitch(a, b, c) => {
                    if a == b {
                        return Err(TangleError::SelfStitch {
                            line: *line,
                            col: col(1),
                            label: a.clone(),
                        });
                    }
                    for (k, l) in [a, b].into_iter().enumerate() {
                        if !live.contains(l) {
                            return Err(unknown(k, l));
                        }
                    }
                    live.remove(a);
                    live.remove(b);
                    if !live.insert(c.clone()) {
                        return Err(dup(2, c));
                    }
                }
                Statement::Delete(a) => {
                    if !live.remove(a) {
                        return Err(unknown(0, a));
                    }
                }
                Statement::Rename(a, b) => {
                    if !live.remove(a) {
                        return Err(unknown(0, a));
                    }
                    if !live.insert(b.clone()) {
                        return Err(dup(1, b));
                    }
                }
                Statement::Reverse(v) => {
                    let mut seen = BTreeSet::new();
                    for (k, l) in v.iter().enumerate() {
                        if !live.contains(l) {
                            return Err(unknown(k, l));
                        }
                        if !seen.insert(l) {
                            return Err(dup(k, l));
                        }
                    }
                }
                Statement::Trace(v) => {
                    tracing = true;
                    for (k, l) in v.iter().enumerate() {
                        if !live.remove(l) {
                            return Err(unknown(k, l));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_long_w_knot() {
        let p = TangleProgram::parse("X- 1 3\nX+ 4 2\nm 1 2 1\nm 1 3 1\nm 1 4 1").unwrap();
        assert_eq!(p.statements.len(), 5);
        assert_eq!(p.writhe(), 0);
        assert_eq!(TangleProgram::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn empty_and_comments() {
        assert!(TangleProgram::parse("").unwrap().statements.is_empty());
        let p = TangleProgram::parse("# a strand\r\ne a   # trailing\r\n").unwrap();
        assert_eq!(p.statements, vec![Statement::Identity(Label::new("a").unwrap())]);
    }

    #[test]
    fn error_positions() {
        match TangleProgram::parse("e 1\ne 2\nm 1 1 1") {
            Err(TangleError::SelfStitch { line: 3, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match TangleProgram::parse("X+ 1 2\nm 1 7 1") {
            Err(TangleError::UnknownLabelReference { line: 2, col: 5, label }) => {
                assert_eq!(label.as_str(), "7")
            }
            other => panic!("{other:?}"),
        }
        match TangleProgram::parse("X+ 1 2\n  frob 1") {
            Err(TangleError::Syntax { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(TangleProgram::parse("e 1\ne 2\ntr 2\ne 3").is_err());
        assert!(TangleProgram::parse("X+ 1 1").is_err());
        assert!(TangleProgram::parse("e a-b").is_err());
    }
}
