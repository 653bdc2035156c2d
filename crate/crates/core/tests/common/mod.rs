#![allow(dead_code)]

use std::collections::BTreeSet;

use linfix::engine::Matrix;
use linfix::frontend::{parse_program, EdbInstance, GroundAtom, Program};
use linfix::semiring::{Semiring, SemiringError, SemiringId};
use linfix::SeededRng;
use rand::seq::IndexedRandom;
use rand::{Rng, RngCore};

/// Integers mod 4 with `max` as addition and modular multiplication.
/// Both monoids are fine but `2⊗max(1,2) = 0` while `max(2⊗1, 2⊗2) = 2`.
pub struct BrokenMod4;

impl Semiring for BrokenMod4 {
    type Elem = u8;

    fn id(&self) -> SemiringId {
        // Only used for reporting.
        SemiringId::Bool
    }
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        *a.max(b)
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        (a * b) % 4
    }
    fn parse(&self, literal: &str) -> Result<u8, SemiringError> {
        literal
            .parse::<u8>()
            .ok()
            .filter(|v| *v < 4)
            .ok_or_else(|| SemiringError::MalformedElement(literal.into()))
    }
    fn format(&self, value: &u8) -> String {
        value.to_string()
    }
    fn elements(&self) -> Option<Vec<u8>> {
        Some(vec![0, 1, 2, 3])
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u8 {
        rng.random_range(0..4)
    }
    fn from_weight(&self, weight: u32) -> u8 {
        (weight % 4) as u8
    }
}

/// Each entry is nonzero-sampled with probability `density`.
pub fn random_matrix<S: Semiring>(
    s: &S,
    n: usize,
    density: f64,
    rng: &mut SeededRng,
) -> Matrix<S::Elem> {
    let mut a = Matrix::zeros(s, n);
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(density) {
                a.set(i, j, s.sample(rng));
            }
        }
    }
    a
}

pub fn random_vector<S: Semiring>(
    s: &S,
    n: usize,
    density: f64,
    rng: &mut SeededRng,
) -> Vec<S::Elem> {
    (0..n)
        .map(|_| {
            if rng.random_bool(density) {
                s.sample(rng)
            } else {
                s.zero()
            }
        })
        .collect()
}

/// `reach[u][v]`: is there a walk with at least one edge from `u` to `v`.
pub fn bfs_reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    (0..n)
        .map(|src| {
            let mut seen = vec![false; n];
            let mut queue: std::collections::VecDeque<usize> = adj[src].iter().copied().collect();
            while let Some(u) = queue.pop_front() {
                if !seen[u] {
                    seen[u] = true;
                    queue.extend(adj[u].iter().copied());
                }
            }
            seen
        })
        .collect()
}

/// Shortest walks with at least one edge; `None` is unreachable.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, u32)]) -> Vec<Vec<Option<u64>>> {
    let mut d = vec![vec![None; n]; n];
    for &(u, v, w) in edges {
        let w = w as u64;
        if d[u][v].is_none_or(|old| w < old) {
            d[u][v] = Some(w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|old| a + b < old) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

const PAIR_PRODUCTS: [&str; 8] = [
    "E(X,Y)",
    "T(X,Z) * E(Z,Y)",
    "E(X,Z) * T(Z,Y)",
    "U(X) * E(X,Y)",
    "T(Y,X) * F(X)",
    "F(X) * E(X,Y) * F(Y)",
    "T(X,Y) * F(Y)",
    "E(X,c0) * E(c0,Y)",
];

const UNARY_PRODUCTS: [&str; 7] = [
    "F(X)",
    "U(Y) * E(Y,X)",
    "T(X,Y) * F(Y)",
    "E(X,X)",
    "U(X) * F(X)",
    "T(X,X)",
    "E(X,c1)",
];

/// A random linear program over EDB `E/2`, `F/1` and IDB `T/2`, `U/1`,
/// together with random facts over the constants `c0..c{dom-1}`.
pub struct RandomProgram {
    pub text: String,
    pub facts: Vec<(GroundAtom, u32)>,
}

pub fn random_linear_program(rng: &mut SeededRng, dom: usize) -> RandomProgram {
    let mut text = String::from("@edb E/2\n@edb F/1\n");
    let mut rules = BTreeSet::new();
    for (head, pool) in [
        ("T(X,Y)", &PAIR_PRODUCTS[..]),
        ("U(X)", &UNARY_PRODUCTS[..]),
    ] {
        for _ in 0..rng.random_range(1..=2) {
            let k = rng.random_range(1..=3);
            let body: Vec<&str> = pool.choose_multiple(rng, k).copied().collect();
            rules.insert(format!("{head} :- {}.", body.join(" + ")));
        }
    }
    for r in &rules {
        text.push_str(r);
        text.push('\n');
    }
    let consts: Vec<String> = (0..dom).map(|i| format!("c{i}")).collect();
    let mut facts = Vec::new();
    for a in &consts {
        if rng.random_bool(0.6) {
            facts.push((GroundAtom::new("F", &[a]), rng.random_range(0..4)));
        }
        for b in &consts {
            if rng.random_bool(0.4) {
                facts.push((GroundAtom::new("E", &[a, b]), rng.random_range(0..4)));
            }
        }
    }
    RandomProgram { text, facts }
}

impl RandomProgram {
    pub fn program(&self) -> Program {
        parse_program(&self.text).unwrap_or_else(|e| panic!("{e}\n{}", self.text))
    }

    /// Facts with values drawn from `s`: weight `w` becomes `s.from_weight(w + 1)`
    /// so that no fact is the additive identity.
    pub fn edb<S: Semiring>(&self, s: &S) -> EdbInstance<S::Elem> {
        let mut db = EdbInstance::new();
        for (atom, w) in &self.facts {
            db.insert(s, atom.clone(), s.from_weight(w + 1));
        }
        db
    }
}
