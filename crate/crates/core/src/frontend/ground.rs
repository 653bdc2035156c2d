use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::ast::{classify_linearity, Atom, Program, Term};
use super::edb::{active_domain, EdbInstance, GroundAtom};
use super::FrontendError;
use crate::engine::{LinearSystem, Matrix, Monomial, PolySystem};
use crate::semiring::Semiring;

/// A grounded program: linear when every product has at most one IDB atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grounded<E> {
    Linear(LinearSystem<E>),
    Polynomial(PolySystem<E>),
}

impl<E> Grounded<E> {
    pub fn atoms(&self) -> &[String] {
        match self {
            Grounded::Linear(sys) => &sys.atoms,
            Grounded::Polynomial(sys) => &sys.atoms,
        }
    }
}

/// Grounds a program, choosing the linear form when the program allows it.
pub fn ground<S: Semiring>(
    s: &S,
    program: &Program,
    db: &EdbInstance<S::Elem>,
    prune: bool,
) -> Result<Grounded<S::Elem>, FrontendError> {
    if classify_linearity(program).is_linear() {
        ground_linear(s, program, db, prune).map(Grounded::Linear)
    } else {
        ground_polynomial(s, program, db, prune).map(Grounded::Polynomial)
    }
}

/// Grounds a linear program into `f(x) = Ax ⊕ b`.
pub fn ground_linear<S: Semiring>(
    s: &S,
    program: &Program,
    db: &EdbInstance<S::Elem>,
    prune: bool,
) -> Result<LinearSystem<S::Elem>, FrontendError> {
    if let Some(r) = classify_linearity(program).first_nonlinear_rule() {
        return Err(FrontendError::Nonlinear {
            rule: program.rules[r].to_string(),
        });
    }
    let g = Grounder::new(s, program, db)?;
    let n = g.atoms.len();
    let mut a = Matrix::zeros(s, n);
    let mut b = vec![s.zero(); n];
    g.instantiate(|head, coeff, idb| match idb {
        [] => b[head] = s.add(&b[head], &coeff),
        [j] => a.accumulate(s, head, *j, &coeff),
        _ => unreachable!("linearity checked above"),
    });
    let sys = LinearSystem::new(g.atom_names(), a, b);
    Ok(if prune { sys.prune(s) } else { sys })
}

/// Grounds any program into one polynomial per atom; monomials with the same
/// variable multiset are combined with `⊕`.
pub fn ground_polynomial<S: Semiring>(
    s: &S,
    program: &Program,
    db: &EdbInstance<S::Elem>,
    prune: bool,
) -> Result<PolySystem<S::Elem>, FrontendError> {
    let g = Grounder::new(s, program, db)?;
    let n = g.atoms.len();
    let mut terms: Vec<BTreeMap<Vec<usize>, S::Elem>> = vec![BTreeMap::new(); n];
    g.instantiate(|head, coeff, idb| {
        let mut vars = idb.to_vec();
        vars.sort_unstable();
        let slot = terms[head].entry(vars).or_insert_with(|| s.zero());
        *slot = s.add(slot, &coeff);
    });
    let rows = terms
        .into_iter()
        .map(|row| {
            row.into_iter()
                .filter(|(_, c)| !s.is_zero(c))
                .map(|(vars, coeff)| Monomial { coeff, vars })
                .collect()
        })
        .collect();
    let sys = PolySystem {
        atoms: g.atom_names(),
        rows,
        raw_n: n,
    };
    Ok(if prune { sys.prune() } else { sys })
}

type Binding<'p> = HashMap<&'p str, &'p str>;

struct Grounder<'p, S: Semiring> {
    s: &'p S,
    program: &'p Program,
    idb: HashSet<&'p str>,
    domain: Vec<String>,
    facts: HashMap<&'p str, Vec<(&'p GroundAtom, &'p S::Elem)>>,
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, usize>,
}

impl<'p, S: Semiring> Grounder<'p, S> {
    fn new(
        s: &'p S,
        program: &'p Program,
        db: &'p EdbInstance<S::Elem>,
    ) -> Result<Self, FrontendError> {
        let idb: HashSet<&str> = program.idb_predicates().into_iter().collect();
        for (atom, _) in db.iter() {
            if idb.contains(atom.pred.as_str()) {
                return Err(FrontendError::IdbFact {
                    pred: atom.pred.clone(),
                    atom: atom.to_string(),
                });
            }
        }
        let mut facts: HashMap<&str, Vec<(&GroundAtom, &S::Elem)>> = HashMap::new();
        for (atom, value) in db.iter() {
            facts
                .entry(atom.pred.as_str())
                .or_default()
                .push((atom, value));
        }
        let mut g = Grounder {
            s,
            program,
            idb,
            domain: Vec::new(),
            facts,
            atoms: Vec::new(),
            index: HashMap::new(),
        };
        // With no facts every product has a zero coefficient: nothing to track.
        if db.is_empty() {
            return Ok(g);
        }
        let declared: HashSet<&str> = program.edb_decls.iter().map(|(p, _)| p.as_str()).collect();
        for atom in program.rules.iter().flat_map(|r| r.body.iter().flatten()) {
            let pred = atom.pred.as_str();
            if !g.idb.contains(pred) && !g.facts.contains_key(pred) && !declared.contains(pred) {
                return Err(FrontendError::UnknownPredicate {
                    pred: pred.to_string(),
                    line: atom.span.line,
                    col: atom.span.col,
                });
            }
        }
        let mut domain: BTreeSet<String> = active_domain(db);
        for rule in &program.rules {
            for atom in std::iter::once(&rule.head).chain(rule.body.iter().flatten()) {
                for t in &atom.args {
                    if let Term::Const(c) = t {
                        domain.insert(c.clone());
                    }
                }
            }
        }
        g.domain = domain.into_iter().collect();
        for pred in program.idb_predicates() {
            let arity = program
                .rules
                .iter()
                .find(|r| r.head.pred == pred)
                .map(|r| r.head.args.len())
                .unwrap();
            for args in tuples(&g.domain, arity) {
                let atom = GroundAtom {
                    pred: pred.to_string(),
                    args,
                };
                g.index.insert(atom.clone(), g.atoms.len());
                g.atoms.push(atom);
            }
        }
        Ok(g)
    }

    fn atom_names(&self) -> Vec<String> {
        self.atoms.iter().map(GroundAtom::to_string).collect()
    }

    /// Calls `emit(head, coefficient, idb_atoms)` for every instantiation of
    /// every product whose EDB atoms all have facts.
    fn instantiate(&self, mut emit: impl FnMut(usize, S::Elem, &[usize])) {
        if self.atoms.is_empty() {
            return;
        }
        for rule in &self.program.rules {
            for product in &rule.body {
                let (edb, idb): (Vec<&Atom>, Vec<&Atom>) = product
                    .iter()
                    .partition(|a| !self.idb.contains(a.pred.as_str()));
                let mut free: Vec<&str> = Vec::new();
                for v in idb.iter().flat_map(|a| a.vars()).chain(rule.head.vars()) {
                    if !free.contains(&v) && !edb.iter().any(|a| a.vars().any(|w| w == v)) {
                        free.push(v);
                    }
                }
                self.join(&edb, Binding::new(), self.s.one(), &mut |binding, coeff| {
                    self.enumerate_free(&free, binding, &mut |full| {
                        let head = self.index[&self.ground(&rule.head, full)];
                        let idb_ix: Vec<usize> = idb
                            .iter()
                            .map(|a| self.index[&self.ground(a, full)])
                            .collect();
                        emit(head, coeff.clone(), &idb_ix);
                    });
                });
            }
        }
    }

    fn join<'b>(
        &'b self,
        atoms: &[&'p Atom],
        binding: Binding<'p>,
        coeff: S::Elem,
        k: &mut dyn FnMut(&Binding<'p>, &S::Elem),
    ) {
        let Some((first, rest)) = atoms.split_first() else {
            k(&binding, &coeff);
            return;
        };
        let Some(candidates) = self.facts.get(first.pred.as_str()) else {
            return;
        };
        for (fact, value) in candidates {
            if let Some(extended) = unify(first, fact, &binding) {
                let next = self.s.mul(&coeff, value);
                if self.s.is_zero(&next) {
                    continue;
                }
                self.join(rest, extended, next, k);
            }
        }
    }

    fn enumerate_free(
        &'p self,
        free: &[&'p str],
        binding: &Binding<'p>,
        k: &mut dyn FnMut(&Binding<'p>),
    ) {
        let Some((var, rest)) = free.split_first() else {
            k(binding);
            return;
        };
        for c in &self.domain {
            let mut extended = binding.clone();
            extended.insert(var, c.as_str());
            self.enumerate_free(rest, &extended, k);
        }
    }

    fn ground(&self, atom: &Atom, binding: &Binding<'_>) -> GroundAtom {
        GroundAtom {
            pred: atom.pred.clone(),
            args: atom
                .args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => binding[v.as_str()].to_string(),
                })
                .collect(),
        }
    }
}

fn unify<'p>(atom: &'p Atom, fact: &'p GroundAtom, binding: &Binding<'p>) -> Option<Binding<'p>> {
    let mut out = binding.clone();
    for (t, c) in atom.args.iter().zip(&fact.args) {
        match t {
            Term::Const(k) if k != c => return None,
            Term::Const(_) => {}
            Term::Var(v) => match out.get(v.as_str()) {
                Some(bound) if *bound != c.as_str() => return None,
                Some(_) => {}
                None => {
                    out.insert(v.as_str(), c.as_str());
                }
            },
        }
    }
    Some(out)
}

/// All `arity`-tuples over the domain in lexicographic order.
fn tuples(domain: &[String], arity: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                domain.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}
