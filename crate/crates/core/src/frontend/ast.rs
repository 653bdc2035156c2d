use std::collections::BTreeSet;
use std::fmt;

use crate::semiring::SemiringId;

/// A line/column position, both 1-based.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

// Positions are diagnostics only and never part of structural equality.
impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
    pub span: Span,
}

impl Atom {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| matches!(t, Term::Const(_)))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(Term::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

/// `A1 * A2 * … * Am`; an empty product never occurs in parsed programs.
pub type Product = Vec<Atom>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: Atom,
    pub body: Vec<Product>,
    pub span: Span,
}

impl Rule {
    pub fn vars(&self) -> BTreeSet<&str> {
        self.head
            .vars()
            .chain(self.body.iter().flatten().flat_map(Atom::vars))
            .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let products: Vec<String> = self
            .body
            .iter()
            .map(|p| {
                p.iter()
                    .map(Atom::to_string)
                    .collect::<Vec<_>>()
                    .join(" * ")
            })
            .collect();
        write!(f, "{} :- {}.", self.head, products.join(" + "))
    }
}

/// A ground EDB atom with its value literal, kept unparsed until a semiring is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub atom: Atom,
    pub value: Option<String>,
    pub span: Span,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "{} = {}.", self.atom, v),
            None => write!(f, "{}.", self.atom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub semiring: Option<SemiringId>,
    /// Predicates declared extensional with `@edb Name/arity`.
    pub edb_decls: Vec<(String, usize)>,
    pub rules: Vec<Rule>,
    pub facts: Vec<Fact>,
}

impl Program {
    /// Predicates heading some rule, in order of first appearance.
    pub fn idb_predicates(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for r in &self.rules {
            if !seen.contains(&r.head.pred.as_str()) {
                seen.push(r.head.pred.as_str());
            }
        }
        seen
    }

    pub fn is_idb(&self, pred: &str) -> bool {
        self.rules.iter().any(|r| r.head.pred == pred)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(id) = &self.semiring {
            writeln!(f, "@semiring {id}")?;
        }
        for (name, arity) in &self.edb_decls {
            writeln!(f, "@edb {name}/{arity}")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        for fact in &self.facts {
            writeln!(f, "{fact}")?;
        }
        Ok(())
    }
}

/// Which products of each rule carry more than one IDB atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearity {
    /// `idb_counts[r][k]` is the number of IDB atoms in product `k` of rule `r`.
    pub idb_counts: Vec<Vec<usize>>,
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        self.idb_counts.iter().flatten().all(|&c| c <= 1)
    }

    /// Index of the first rule with a product holding two or more IDB atoms.
    pub fn first_nonlinear_rule(&self) -> Option<usize> {
        self.idb_counts
            .iter()
            .position(|counts| counts.iter().any(|&c| c > 1))
    }
}

pub fn classify_linearity(program: &Program) -> Linearity {
    let idb: BTreeSet<&str> = program.idb_predicates().into_iter().collect();
    Linearity {
        idb_counts: program
            .rules
            .iter()
            .map(|r| {
                r.body
                    .iter()
                    .map(|p| p.iter().filter(|a| idb.contains(a.pred.as_str())).count())
                    .collect()
            })
            .collect(),
    }
}
