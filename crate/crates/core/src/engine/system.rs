use std::collections::VecDeque;

use super::matrix::Matrix;
use crate::semiring::Semiring;

/// A grounded linear system `f(x) = Ax ⊕ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem<E> {
    /// Display names of the tracked atoms; `atoms[i]` is variable `x_i`.
    pub atoms: Vec<String>,
    pub a: Matrix<E>,
    pub b: Vec<E>,
    /// Atom count before pruning.
    pub raw_n: usize,
}

impl<E: Clone + Eq + Send + Sync> LinearSystem<E> {
    pub fn new(atoms: Vec<String>, a: Matrix<E>, b: Vec<E>) -> Self {
        assert_eq!(atoms.len(), a.n());
        assert_eq!(b.len(), a.n());
        let raw_n = atoms.len();
        LinearSystem { atoms, a, b, raw_n }
    }

    /// A system whose atoms are named `x0, x1, …`.
    pub fn unnamed(a: Matrix<E>, b: Vec<E>) -> Self {
        let atoms = (0..a.n()).map(|i| format!("x{i}")).collect();
        Self::new(atoms, a, b)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Drops atoms that stay zero under iteration from `0`: those not
    /// reachable from a nonzero `b_i` by following nonzero `A[i][j]` from
    /// `j` to `i`. The raw count is kept.
    pub fn prune<S: Semiring<Elem = E>>(&self, s: &S) -> LinearSystem<E> {
        let n = self.n();
        let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, j, _) in self.a.nonzeros() {
            dependents[j].push(i);
        }
        let mut live = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| !s.is_zero(&self.b[i])).collect();
        for &i in &queue {
            live[i] = true;
        }
        while let Some(j) = queue.pop_front() {
            for &i in &dependents[j] {
                if !live[i] {
                    live[i] = true;
                    queue.push_back(i);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| live[i]).collect();
        LinearSystem {
            atoms: keep.iter().map(|&i| self.atoms[i].clone()).collect(),
            a: self.a.restrict(s, &keep),
            b: keep.iter().map(|&i| self.b[i].clone()).collect(),
            raw_n: self.raw_n,
        }
    }

    /// The same system with one monomial per nonzero entry.
    pub fn to_polynomial(&self) -> PolySystem<E> {
        let n = self.n();
        let mut rows: Vec<Vec<Monomial<E>>> = vec![Vec::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in self.a.row(i) {
                row.push(Monomial {
                    coeff: v.clone(),
                    vars: vec![j],
                });
            }
            if self.b[i] != *self.a.zero() {
                row.push(Monomial {
                    coeff: self.b[i].clone(),
                    vars: Vec::new(),
                });
            }
        }
        PolySystem {
            atoms: self.atoms.clone(),
            rows,
            raw_n: self.raw_n,
        }
    }
}

/// One term `coeff ⊗ x_{v1} ⊗ … ⊗ x_{vd}` of a polynomial right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial<E> {
    pub coeff: E,
    /// Variable indices, sorted; repeats encode powers.
    pub vars: Vec<usize>,
}

/// A grounded polynomial system `x_i ← ⊕ monomials(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem<E> {
    pub atoms: Vec<String>,
    pub rows: Vec<Vec<Monomial<E>>>,
    pub raw_n: usize,
}

impl<E: Clone + Eq + Send + Sync> PolySystem<E> {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Keeps atoms whose value can become nonzero from `x = 0`: the least set
    /// closed under "some monomial has all its variables live".
    pub fn prune(&self) -> PolySystem<E> {
        let n = self.n();
        let mut live = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                if !live[i] && self.rows[i].iter().any(|m| m.vars.iter().all(|&v| live[v])) {
                    live[i] = true;
                    changed = true;
                }
            }
        }
        let mut renumber = vec![usize::MAX; n];
        let keep: Vec<usize> = (0..n).filter(|&i| live[i]).collect();
        for (new, &old) in keep.iter().enumerate() {
            renumber[old] = new;
        }
        let rows = keep
            .iter()
            .map(|&i| {
                self.rows[i]
                    .iter()
                    .filter(|m| m.vars.iter().all(|&v| live[v]))
                    .map(|m| Monomial {
                        coeff: m.coeff.clone(),
                        vars: m.vars.iter().map(|&v| renumber[v]).collect(),
                    })
                    .collect()
            })
            .collect();
        PolySystem {
            atoms: keep.iter().map(|&i| self.atoms[i].clone()).collect(),
            rows,
            raw_n: self.raw_n,
        }
    }

    /// Largest monomial degree.
    pub fn degree(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .map(|m| m.vars.len())
            .max()
            .unwrap_or(0)
    }
}
