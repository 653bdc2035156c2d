//! Matrix files and trace CSV.
//!
//! A matrix file states its semiring and size on the first two lines, then
//! lists nonzero entries with 0-based indices:
//!
//! ```text
//! semiring trop
//! n 3
//! # spec family=random n=3 ...
//! # atom 0 T(v000,v001)
//! A 1 0 4
//! b 0 3
//! ```
//!
//! Lines starting with `#` are comments; `# atom`, `# spec` and `# raw_n`
//! comments are read back when present.

use std::io::Write;

use thiserror::Error;

use crate::engine::{IterationTrace, LinearSystem, Matrix};
use crate::semiring::{Semiring, SemiringId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixFileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("file is for semiring `{found}`, expected `{expected}`")]
    SemiringMismatch { found: String, expected: String },
}

fn malformed(line: usize, message: impl Into<String>) -> MatrixFileError {
    MatrixFileError::Malformed {
        line,
        message: message.into(),
    }
}

/// Reads the semiring named on the first line.
pub fn matrix_file_semiring(text: &str) -> Result<SemiringId, MatrixFileError> {
    let first = text.lines().next().unwrap_or("");
    let id = first
        .strip_prefix("semiring ")
        .ok_or_else(|| malformed(1, "expected `semiring <id>`"))?;
    id.trim()
        .parse()
        .map_err(|e: crate::semiring::SemiringError| malformed(1, e.to_string()))
}

/// A parsed matrix file.
#[derive(Debug, Clone)]
pub struct MatrixFile<E> {
    pub system: LinearSystem<E>,
    /// The `# spec` header line, if any.
    pub spec: Option<String>,
}

pub fn read_matrix_file<S: Semiring>(
    s: &S,
    text: &str,
) -> Result<MatrixFile<S::Elem>, MatrixFileError> {
    let id = matrix_file_semiring(text)?;
    if id != s.id() {
        return Err(MatrixFileError::SemiringMismatch {
            found: id.to_string(),
            expected: s.id().to_string(),
        });
    }
    let mut lines = text.lines().enumerate().skip(1);
    let n: usize = lines
        .next()
        .and_then(|(_, l)| l.strip_prefix("n "))
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| malformed(2, "expected `n <int>`"))?;
    let mut a = Matrix::zeros(s, n);
    let mut b = vec![s.zero(); n];
    let mut atoms: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut spec = None;
    let mut raw_n = n;
    let index = |tok: Option<&str>, line: usize| -> Result<usize, MatrixFileError> {
        let i: usize = tok
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed(line, "expected an index"))?;
        if i >= n {
            return Err(malformed(line, format!("index {i} outside 0..{n}")));
        }
        Ok(i)
    };
    for (k, raw) in lines {
        let line = k + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let comment = comment.trim_start();
            if let Some(rest) = comment.strip_prefix("atom ") {
                let (i, name) = rest
                    .split_once(' ')
                    .ok_or_else(|| malformed(line, "expected `# atom <i> <name>`"))?;
                atoms[index(Some(i), line)?] = name.to_string();
            } else if let Some(rest) = comment.strip_prefix("spec ") {
                spec = Some(rest.to_string());
            } else if let Some(rest) = comment.strip_prefix("raw_n ") {
                raw_n = rest
                    .trim()
                    .parse()
                    .map_err(|_| malformed(line, "expected `# raw_n <int>`"))?;
            }
            continue;
        }
        let mut toks = text.split_whitespace();
        let parse = |lit: Vec<&str>| {
            s.parse(&lit.join(" "))
                .map_err(|e| malformed(line, e.to_string()))
        };
        match toks.next() {
            Some("A") => {
                let i = index(toks.next(), line)?;
                let j = index(toks.next(), line)?;
                let v = parse(toks.collect())?;
                a.accumulate(s, i, j, &v);
            }
            Some("b") => {
                let i = index(toks.next(), line)?;
                let v = parse(toks.collect())?;
                b[i] = s.add(&b[i], &v);
            }
            Some(other) => return Err(malformed(line, format!("unknown entry kind `{other}`"))),
            None => {}
        }
    }
    let mut system = LinearSystem::new(atoms, a, b);
    system.raw_n = raw_n;
    Ok(MatrixFile { system, spec })
}

/// Writes a system, its atom names and an optional spec line.
pub fn write_matrix_file<S: Semiring, W: Write>(
    s: &S,
    sys: &LinearSystem<S::Elem>,
    spec: Option<&str>,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "semiring {}", s.id())?;
    writeln!(out, "n {}", sys.n())?;
    if let Some(spec) = spec {
        writeln!(out, "# spec {spec}")?;
    }
    writeln!(out, "# raw_n {}", sys.raw_n)?;
    for (i, name) in sys.atoms.iter().enumerate() {
        writeln!(out, "# atom {i} {name}")?;
    }
    for (i, j, v) in sys.a.nonzeros() {
        writeln!(out, "A {i} {j} {}", s.format(v))?;
    }
    for (i, v) in sys.b.iter().enumerate() {
        if !s.is_zero(v) {
            writeln!(out, "b {i} {}", s.format(v))?;
        }
    }
    Ok(())
}

/// One CSV row per state entry: `step,atom,value`.
pub fn write_trace_csv<S: Semiring, W: Write>(
    s: &S,
    atoms: &[String],
    trace: &IterationTrace<S::Elem>,
    out: W,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "atom", "value"])?;
    for (step, state) in trace.states.iter().enumerate() {
        for (atom, v) in atoms.iter().zip(state) {
            w.write_record([step.to_string(), atom.clone(), s.format(v)])?;
        }
    }
    w.flush()?;
    Ok(())
}
