use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;

use super::ast::{Program, Term};
use super::FrontendError;
use crate::semiring::{Semiring, SemiringId};

/// A ground atom `pred(c1,…,ck)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(pred: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom {
            pred: pred.into(),
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// Extensional facts with their semiring values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdbInstance<E> {
    facts: BTreeMap<GroundAtom, E>,
}

impl<E> Default for EdbInstance<E> {
    fn default() -> Self {
        EdbInstance {
            facts: BTreeMap::new(),
        }
    }
}

impl<E: Clone + Eq> EdbInstance<E> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fact, combining with `⊕` if the atom is already present.
    pub fn insert<S: Semiring<Elem = E>>(&mut self, s: &S, atom: GroundAtom, value: E) {
        match self.facts.get_mut(&atom) {
            Some(old) => {
                log::warn!("duplicate fact {atom}: values combined with ⊕");
                *old = s.add(old, &value);
            }
            None => {
                self.facts.insert(atom, value);
            }
        }
    }

    /// Collects the inline facts of a program.
    pub fn from_program<S: Semiring<Elem = E>>(
        s: &S,
        program: &Program,
    ) -> Result<Self, FrontendError> {
        let mut db = Self::new();
        for fact in &program.facts {
            let args = fact
                .atom
                .args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => unreachable!("parser rejects variable `{v}` in facts"),
                })
                .collect();
            let atom = GroundAtom {
                pred: fact.atom.pred.clone(),
                args,
            };
            let value = fact_value(s, fact.value.as_deref(), &fact.span.to_string())?;
            db.insert(s, atom, value);
        }
        Ok(db)
    }

    /// Reads tab-separated facts: predicate, arguments, value literal.
    /// Lines starting with `#` are comments.
    pub fn load_tsv<S: Semiring<Elem = E>, R: Read>(
        &mut self,
        s: &S,
        reader: R,
    ) -> Result<(), FrontendError> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(reader);
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| FrontendError::BadFact {
                location: format!("row {}", row + 1),
                message: e.to_string(),
            })?;
            let location = record
                .position()
                .map_or(format!("row {}", row + 1), |p| format!("line {}", p.line()));
            let fields: Vec<&str> = record.iter().map(str::trim).collect();
            if fields.len() < 2 {
                return Err(FrontendError::BadFact {
                    location,
                    message: "expected a predicate, its arguments and a value".into(),
                });
            }
            let atom = GroundAtom {
                pred: fields[0].to_string(),
                args: fields[1..fields.len() - 1]
                    .iter()
                    .map(|a| a.to_string())
                    .collect(),
            };
            let value = fact_value(s, Some(fields[fields.len() - 1]), &location)?;
            self.insert(s, atom, value);
        }
        Ok(())
    }

    pub fn get(&self, atom: &GroundAtom) -> Option<&E> {
        self.facts.get(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroundAtom, &E)> {
        self.facts.iter()
    }

    /// Facts of one predicate, in atom order.
    pub fn facts_of<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = (&'a GroundAtom, &'a E)> {
        self.facts.iter().filter(move |(a, _)| a.pred == pred)
    }

    pub fn predicates(&self) -> BTreeSet<&str> {
        self.facts.keys().map(|a| a.pred.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

fn fact_value<S: Semiring>(
    s: &S,
    literal: Option<&str>,
    location: &str,
) -> Result<S::Elem, FrontendError> {
    match literal {
        Some(text) => s.parse(text).map_err(|e| FrontendError::BadFact {
            location: location.to_string(),
            message: e.to_string(),
        }),
        None if s.id() == SemiringId::Bool => Ok(s.one()),
        None => Err(FrontendError::BadFact {
            location: location.to_string(),
            message: format!("facts need an explicit `= <value>` under `{}`", s.id()),
        }),
    }
}

/// The constants occurring in the facts.
pub fn active_domain<E>(db: &EdbInstance<E>) -> BTreeSet<String> {
    db.facts
        .keys()
        .flat_map(|a| a.args.iter().cloned())
        .collect()
}
