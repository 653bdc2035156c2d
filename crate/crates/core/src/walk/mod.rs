//! Brute-force walk sums over the label digraph of a matrix, and the
//! decomposition of a walk into a simple path plus simple cycles.

mod decompose;
mod sums;

use std::fmt;

use thiserror::Error;

use crate::engine::Matrix;
use crate::semiring::Semiring;

pub use decompose::{
    cycle_decompose, cycle_decompose_edges, eulerian_walk_check, reassemble, CycleDecomposition,
    DecomposeOptions, EdgeMultiset,
};
pub use sums::{walk_sum_exact, walk_sum_upto, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("enumerating {n}^{h} walks exceeds the budget of {budget}")]
    EnumerationTooLarge { n: usize, h: usize, budget: u64 },
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("cannot reassemble: {0}")]
    NotReassemblable(String),
    #[error("decomposition invariant violated: {0}")]
    InvariantViolated(String),
}

/// A walk given by its vertex sequence `v0, v1, …, vk`; it has `k` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    /// Panics on an empty vertex list; a zero-length walk still has its start.
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a walk has at least one vertex");
        Walk { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// No vertex repeats.
    pub fn is_simple_path(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// Closed, nonempty, and no vertex repeats apart from the closing one.
    pub fn is_simple_cycle(&self) -> bool {
        !self.is_empty()
            && self.start() == self.end()
            && Walk::new(self.vertices[..self.len()].to_vec()).is_simple_path()
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("->"))
    }
}

/// `Φ(W)`: the product of the labels along the walk.
pub fn phi<S: Semiring>(s: &S, a: &Matrix<S::Elem>, walk: &Walk) -> S::Elem {
    walk.edges()
        .fold(s.one(), |acc, (u, v)| s.mul(&acc, a.get(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{TropValue, Tropical};

    #[test]
    fn display_and_shape() {
        let w = Walk::new(vec![0, 1, 0, 2]);
        assert_eq!(w.to_string(), "0->1->0->2");
        assert_eq!(w.len(), 3);
        assert!(!w.is_simple_path());
        assert!(Walk::new(vec![0, 1, 2, 0]).is_simple_cycle());
        assert!(Walk::new(vec![3, 3]).is_simple_cycle());
        assert!(!Walk::new(vec![0, 1, 0, 1, 0]).is_simple_cycle());
        assert!(Walk::new(vec![4]).is_simple_path());
    }

    #[test]
    fn phi_multiplies_labels() {
        let s = Tropical;
        let w = |v| TropValue::int(v);
        let a = Matrix::from_rows(
            &s,
            vec![
                vec![TropValue::Inf, w(1), TropValue::Inf],
                vec![TropValue::Inf, TropValue::Inf, w(2)],
                vec![w(3), TropValue::Inf, TropValue::Inf],
            ],
        );
        assert_eq!(phi(&s, &a, &Walk::new(vec![0, 1, 2, 0])), w(6));
        assert_eq!(phi(&s, &a, &Walk::new(vec![0])), w(0));
        assert_eq!(phi(&s, &a, &Walk::new(vec![0, 2])), TropValue::Inf);
    }
}
