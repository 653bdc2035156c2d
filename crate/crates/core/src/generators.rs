//! Seeded instance generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::engine::{LinearSystem, Matrix};
use crate::frontend::{ground_linear, parse_program, EdbInstance, GroundAtom};
use crate::semiring::{Capped, CappedValue, Semiring, SemiringId};
use crate::SeededRng;

/// The transitive-closure / shortest-path program used for random digraphs.
pub const PATH_PROGRAM: &str = "T(X,Y) :- E(X,Y) + T(X,Z) * E(Z,Y).";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed instance spec: {0}")]
    MalformedSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    Blocked,
    Cycle,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Random => "random",
            Family::Blocked => "blocked",
            Family::Cycle => "cycle",
        })
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Family::Random),
            "blocked" => Ok(Family::Blocked),
            "cycle" => Ok(Family::Cycle),
            other => Err(GenError::MalformedSpec(format!("unknown family `{other}`"))),
        }
    }
}

/// Everything that determines a generated instance. Printed as one line of
/// `key=value` pairs, which is also embedded in matrix-file headers.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    /// Cap of the capped semiring (cycle family only).
    pub l: u32,
    pub density: f64,
    pub wmin: u32,
    pub wmax: u32,
    pub semiring: SemiringId,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn random(
        n: usize,
        density: f64,
        weights: (u32, u32),
        semiring: SemiringId,
        seed: u64,
    ) -> Self {
        InstanceSpec {
            family: Family::Random,
            n,
            l: 1,
            density,
            wmin: weights.0,
            wmax: weights.1,
            semiring,
            seed,
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family={} n={} L={} density={} wmin={} wmax={} semiring={} seed={}",
            self.family,
            self.n,
            self.l,
            self.density,
            self.wmin,
            self.wmax,
            self.semiring,
            self.seed
        )
    }
}

impl FromStr for InstanceSpec {
    type Err = GenError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut spec = InstanceSpec::random(0, 1.0, (1, 1), SemiringId::Bool, 0);
        let bad = |k: &str, v: &str| GenError::MalformedSpec(format!("bad value `{v}` for `{k}`"));
        for pair in text.split_whitespace() {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                GenError::MalformedSpec(format!("expected key=value, found `{pair}`"))
            })?;
            match k {
                "family" => spec.family = v.parse()?,
                "n" => spec.n = v.parse().map_err(|_| bad(k, v))?,
                "L" => spec.l = v.parse().map_err(|_| bad(k, v))?,
                "density" => spec.density = v.parse().map_err(|_| bad(k, v))?,
                "wmin" => spec.wmin = v.parse().map_err(|_| bad(k, v))?,
                "wmax" => spec.wmax = v.parse().map_err(|_| bad(k, v))?,
                "semiring" => spec.semiring = v.parse().map_err(|_| bad(k, v))?,
                "seed" => spec.seed = v.parse().map_err(|_| bad(k, v))?,
                other => return Err(GenError::MalformedSpec(format!("unknown key `{other}`"))),
            }
        }
        Ok(spec)
    }
}

/// Edges of the three-block graph on vertices `0..n` (0-based): blocks
/// `B = [0, n/3)`, `C = [n/3, 2n/3)`, `D = [2n/3, n)`. Every vertex of `B`
/// points to the first vertex of `C`, the last vertex of `C` points to every
/// vertex of `D`, every vertex of `D` points to every vertex of `B`, and `C`
/// is a chain.
pub fn gen_blocked_graph(n: usize) -> Result<Vec<(usize, usize)>, GenError> {
    if n < 3 || !n.is_multiple_of(3) {
        return Err(GenError::InvalidParameter(format!(
            "the blocked graph needs n >= 3 divisible by 3, got {n}"
        )));
    }
    let t = n / 3;
    let (entry, exit) = (t, 2 * t - 1);
    let mut edges = Vec::new();
    edges.extend((0..t).map(|b| (b, entry)));
    edges.extend((2 * t..n).map(|d| (exit, d)));
    for d in 2 * t..n {
        edges.extend((0..t).map(|b| (d, b)));
    }
    edges.extend((t..exit).map(|c| (c, c + 1)));
    edges.sort_unstable();
    Ok(edges)
}

/// The canonical walk endpoints `(first of C, second of C)`, 0-based.
pub fn blocked_endpoints(n: usize) -> (usize, usize) {
    (n / 3, n / 3 + 1)
}

/// The blocked graph with every edge labeled `one`, and `b` seeding the
/// canonical end vertex, so `x_u` collects the walks from `u` to it.
pub fn blocked_system<S: Semiring>(s: &S, n: usize) -> Result<LinearSystem<S::Elem>, GenError> {
    let edges = gen_blocked_graph(n)?;
    let mut a = Matrix::zeros(s, n);
    for (u, v) in edges {
        a.set(u, v, s.one());
    }
    let mut b = vec![s.zero(); n];
    b[blocked_endpoints(n).1] = s.one();
    Ok(named(a, b))
}

fn named<E: Clone + Eq + Send + Sync>(a: Matrix<E>, b: Vec<E>) -> LinearSystem<E> {
    let atoms = (0..a.n()).map(|i| format!("v{i}")).collect();
    LinearSystem::new(atoms, a, b)
}

/// A directed `n`-cycle over `capped:L`: edge `0 → 1` carries the integer 1,
/// every other edge the multiplicative identity 0, and `b` seeds vertex 0
/// with the identity.
pub fn gen_cycle_lowerbound(
    n: usize,
    l: u32,
) -> Result<(Capped, LinearSystem<CappedValue>), GenError> {
    if n < 2 || l < 1 {
        return Err(GenError::InvalidParameter(format!(
            "the cycle family needs n >= 2 and L >= 1, got n={n}, L={l}"
        )));
    }
    let s = Capped::new(l);
    let mut a = Matrix::zeros(&s, n);
    for u in 0..n {
        let label = if u == 0 { s.int(1) } else { s.one() };
        a.set(u, (u + 1) % n, label);
    }
    let mut b = vec![s.zero(); n];
    b[0] = s.one();
    Ok((s, named(a, b)))
}

/// A seeded random digraph and its grounded path program.
#[derive(Debug, Clone)]
pub struct RandomDigraph<E> {
    pub n: usize,
    /// `(u, v, weight)` with `u != v`.
    pub edges: Vec<(usize, usize, u32)>,
    pub system: LinearSystem<E>,
}

/// Draws each edge `u → v` (`u ≠ v`) with probability `density` and a
/// uniform integer weight in `weights`, then grounds [`PATH_PROGRAM`] over the
/// facts `E(vu, vv) = weight`. Atoms that stay zero are pruned.
pub fn gen_random_digraph<S: Semiring>(
    s: &S,
    n: usize,
    density: f64,
    weights: (u32, u32),
    seed: u64,
) -> Result<RandomDigraph<S::Elem>, GenError> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(GenError::InvalidParameter(format!(
            "density {density} is not in (0, 1]"
        )));
    }
    if weights.0 > weights.1 {
        return Err(GenError::InvalidParameter(format!(
            "empty weight range {}..={}",
            weights.0, weights.1
        )));
    }
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                edges.push((u, v, rng.random_range(weights.0..=weights.1)));
            }
        }
    }
    let program = parse_program(PATH_PROGRAM).expect("the built-in program parses");
    let mut db = EdbInstance::new();
    for &(u, v, w) in &edges {
        db.insert(
            s,
            GroundAtom::new("E", &[&vertex(u), &vertex(v)]),
            s.from_weight(w),
        );
    }
    let system = ground_linear(s, &program, &db, true).expect("the built-in program grounds");
    Ok(RandomDigraph { n, edges, system })
}

/// Vertex names used by generated facts; zero-padded so that name order is index order.
pub fn vertex(i: usize) -> String {
    format!("v{i:03}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Tropical};

    #[test]
    fn blocked_minimum() {
        assert_eq!(gen_blocked_graph(3).unwrap(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(gen_blocked_graph(4).is_err());
        assert!(gen_blocked_graph(0).is_err());
    }

    #[test]
    fn blocked_edge_counts() {
        for n in [3, 6, 9, 12] {
            let t = n / 3;
            let edges = gen_blocked_graph(n).unwrap();
            // B -> entry, exit -> D, D -> B, and the C chain.
            assert_eq!(edges.len(), t + t + t * t + (t - 1), "n={n}");
            let d_to_b = edges.iter().filter(|(u, v)| *u >= 2 * t && *v < t).count();
            assert_eq!(d_to_b, t * t);
        }
        assert_eq!(
            gen_blocked_graph(6)
                .unwrap()
                .iter()
                .filter(|(u, v)| *u >= 4 && *v < 2)
                .count(),
            4
        );
    }

    #[test]
    fn cycle_family() {
        let (s, sys) = gen_cycle_lowerbound(3, 4).unwrap();
        assert_eq!(sys.a.nnz(), 3);
        let ones: Vec<_> = sys
            .a
            .nonzeros()
            .into_iter()
            .filter(|(_, _, v)| **v == s.int(1))
            .collect();
        assert_eq!(ones.len(), 1);
        assert_eq!((ones[0].0, ones[0].1), (0, 1));
        assert!(gen_cycle_lowerbound(1, 4).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let s = Tropical;
        let a = gen_random_digraph(&s, 5, 0.4, (1, 9), 11).unwrap();
        let b = gen_random_digraph(&s, 5, 0.4, (1, 9), 11).unwrap();
        assert_eq!(a.edges, b.edges);
        assert_eq!(a.system, b.system);
        let c = gen_random_digraph(&s, 5, 0.4, (1, 9), 12).unwrap();
        assert_ne!(a.edges, c.edges);
    }

    #[test]
    fn complete_digraph() {
        let g = gen_random_digraph(&Boolean, 3, 1.0, (1, 1), 0).unwrap();
        assert_eq!(g.edges.len(), 6);
        // Every ordered pair, loops included, is reachable.
        assert_eq!(g.system.n(), 9);
        assert!(gen_random_digraph(&Boolean, 3, 0.0, (1, 1), 0).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec = InstanceSpec::random(4, 0.5, (1, 9), SemiringId::Trop, 7);
        let text = spec.to_string();
        assert_eq!(
            text,
            "family=random n=4 L=1 density=0.5 wmin=1 wmax=9 semiring=trop seed=7"
        );
        assert_eq!(text.parse::<InstanceSpec>().unwrap(), spec);
        assert!("family=nope".parse::<InstanceSpec>().is_err());
    }
}
