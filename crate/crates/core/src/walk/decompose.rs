use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{phi, Walk, WalkError};
use crate::engine::Matrix;
use crate::semiring::Semiring;
use crate::SeededRng;

/// Directed edges with multiplicities; absent keys mean zero copies.
pub type EdgeMultiset = BTreeMap<(usize, usize), usize>;

fn multiset_of(walk: &Walk) -> EdgeMultiset {
    let mut m = EdgeMultiset::new();
    for e in walk.edges() {
        *m.entry(e).or_default() += 1;
    }
    m
}

/// A walk `i → j` factored as a simple path plus simple cycles taken `z` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub path: Walk,
    /// `(C_h, z_h)` in extraction order; each `C_h` is closed (first = last vertex).
    pub cycles: Vec<(Walk, usize)>,
}

impl CycleDecomposition {
    pub fn start(&self) -> usize {
        self.path.start()
    }

    pub fn end(&self) -> usize {
        self.path.end()
    }

    /// Number of distinct cycles.
    pub fn ell(&self) -> usize {
        self.cycles.len()
    }

    /// Edges of the path plus `z_h` copies of each cycle.
    pub fn edge_multiset(&self) -> EdgeMultiset {
        let mut m = multiset_of(&self.path);
        for (c, z) in &self.cycles {
            for e in c.edges() {
                *m.entry(e).or_default() += z;
            }
        }
        m
    }

    /// `Φ(P) ⊗ Π_h Φ(C_h)^{z_h}`.
    pub fn phi<S: Semiring>(&self, s: &S, a: &Matrix<S::Elem>) -> S::Elem {
        self.cycles
            .iter()
            .fold(phi(s, a, &self.path), |acc, (c, z)| {
                s.mul(&acc, &s.pow(&phi(s, a, c), *z))
            })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecomposeOptions {
    /// Shuffles the order in which cycles are searched for.
    pub seed: Option<u64>,
    /// Checks the component structure of the remaining edges at every step.
    pub debug: bool,
}

/// Degree balance and weak connectivity of the edges with nonzero
/// multiplicity. For `i ≠ j`: `i` has one more out-edge than in-edges, `j`
/// one more in-edge, everything else balanced. For `i = j`: all balanced and
/// `i` has an in-edge.
pub fn eulerian_walk_check(edges: &EdgeMultiset, i: usize, j: usize) -> bool {
    let mut balance: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (&(u, v), &m) in edges.iter().filter(|(_, m)| **m > 0) {
        balance.entry(u).or_default().0 += m;
        balance.entry(v).or_default().1 += m;
    }
    let degrees = |v: usize| balance.get(&v).copied().unwrap_or((0, 0));
    let degrees_ok = if i != j {
        let (out_i, in_i) = degrees(i);
        let (out_j, in_j) = degrees(j);
        out_i == in_i + 1
            && in_j == out_j + 1
            && balance
                .iter()
                .filter(|(v, _)| **v != i && **v != j)
                .all(|(_, (o, n))| o == n)
    } else {
        degrees(i).1 > 0 && balance.values().all(|(o, n)| o == n)
    };
    degrees_ok && components(edges).len() == 1
}

/// Weakly connected components of the support, each as its edge multiset.
fn components(edges: &EdgeMultiset) -> Vec<EdgeMultiset> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            return v;
        }
        let root = find(parent, p);
        parent.insert(v, root);
        root
    }
    let live: Vec<((usize, usize), usize)> = edges
        .iter()
        .filter(|(_, m)| **m > 0)
        .map(|(e, m)| (*e, *m))
        .collect();
    for &((u, v), _) in &live {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent.insert(ru, rv);
        }
    }
    let mut by_root: BTreeMap<usize, EdgeMultiset> = BTreeMap::new();
    for ((u, v), m) in live {
        let r = find(&mut parent, u);
        by_root.entry(r).or_default().insert((u, v), m);
    }
    by_root.into_values().collect()
}

/// Every edge multiset met during the decomposition consists of one walk
/// `i → j` (possibly empty when `i = j`) and Eulerian circuits.
fn check_structure(edges: &EdgeMultiset, i: usize, j: usize) -> Result<(), WalkError> {
    let mut walk_found = false;
    for comp in components(edges) {
        let touches = comp.keys().any(|&(u, v)| u == i || v == i);
        if touches {
            if !eulerian_walk_check(&comp, i, j) {
                return Err(WalkError::InvariantViolated(format!(
                    "the component of {i} is not a walk {i} -> {j}"
                )));
            }
            walk_found = true;
        } else {
            let v = comp.keys().next().unwrap().0;
            if !eulerian_walk_check(&comp, v, v) {
                return Err(WalkError::InvariantViolated(format!(
                    "the component of {v} is not an Eulerian circuit"
                )));
            }
        }
    }
    if !walk_found && i != j {
        return Err(WalkError::InvariantViolated(format!(
            "no edges left to connect {i} to {j}"
        )));
    }
    Ok(())
}

/// Depth-first search of the support for a simple cycle.
fn find_cycle(edges: &EdgeMultiset, rng: &mut Option<SeededRng>) -> Option<Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&(u, v), &m) in edges {
        if m > 0 {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default();
        }
    }
    let mut roots: Vec<usize> = adj.keys().copied().collect();
    if let Some(rng) = rng.as_mut() {
        roots.shuffle(rng);
        for succ in adj.values_mut() {
            succ.shuffle(rng);
        }
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark: BTreeMap<usize, Mark> = adj.keys().map(|&v| (v, Mark::New)).collect();
    for root in roots {
        if mark[&root] != Mark::New {
            continue;
        }
        // Stack of (vertex, next successor position); the active path is the stack.
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark.insert(root, Mark::Active);
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let succ = &adj[&v];
            if *pos == succ.len() {
                mark.insert(v, Mark::Done);
                stack.pop();
                continue;
            }
            let w = succ[*pos];
            *pos += 1;
            match mark[&w] {
                Mark::Active => {
                    let from = stack.iter().position(|(u, _)| *u == w).unwrap();
                    let mut cycle: Vec<usize> = stack[from..].iter().map(|(u, _)| *u).collect();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    mark.insert(w, Mark::Active);
                    stack.push((w, 0));
                }
                Mark::Done => {}
            }
        }
    }
    None
}

/// Decomposes a walk: repeatedly pick a simple cycle among the remaining
/// edges, take it `z` times where `z` is the smallest multiplicity of its
/// edges, and remove those copies. What is left is a simple path.
pub fn cycle_decompose(
    walk: &Walk,
    n: usize,
    opts: DecomposeOptions,
) -> Result<CycleDecomposition, WalkError> {
    if let Some(v) = walk.vertices().iter().find(|&&v| v >= n) {
        return Err(WalkError::InvalidWalk(format!("vertex {v} outside 0..{n}")));
    }
    cycle_decompose_edges(&multiset_of(walk), walk.start(), walk.end(), opts)
}

/// [`cycle_decompose`] on an edge multiset that must form a walk `i → j`.
pub fn cycle_decompose_edges(
    edges: &EdgeMultiset,
    i: usize,
    j: usize,
    opts: DecomposeOptions,
) -> Result<CycleDecomposition, WalkError> {
    let mut remaining: EdgeMultiset = edges
        .iter()
        .filter(|(_, m)| **m > 0)
        .map(|(e, m)| (*e, *m))
        .collect();
    let empty_closed = remaining.is_empty() && i == j;
    if !empty_closed && !eulerian_walk_check(&remaining, i, j) {
        return Err(WalkError::InvalidWalk(format!(
            "the edges do not form one connected walk {i} -> {j}"
        )));
    }
    let mut rng = opts.seed.map(SeededRng::seed_from_u64);
    let mut cycles = Vec::new();
    loop {
        if opts.debug {
            check_structure(&remaining, i, j)?;
        }
        let Some(cycle) = find_cycle(&remaining, &mut rng) else {
            break;
        };
        let cycle = Walk::new(cycle);
        let z = cycle.edges().map(|e| remaining[&e]).min().unwrap();
        for e in cycle.edges() {
            let m = remaining.get_mut(&e).unwrap();
            *m -= z;
            if *m == 0 {
                remaining.remove(&e);
            }
        }
        cycles.push((cycle, z));
    }
    // Acyclic and still a walk from i: follow the unique out-edges.
    let mut path = vec![i];
    let mut rest = remaining.clone();
    let mut v = i;
    while let Some((&(_, w), _)) = rest.range((v, 0)..=(v, usize::MAX)).next() {
        rest.remove(&(v, w));
        path.push(w);
        v = w;
    }
    if !rest.is_empty() || v != j {
        return Err(WalkError::InvariantViolated(format!(
            "leftover edges after removing cycles are not a path {i} -> {j}"
        )));
    }
    Ok(CycleDecomposition {
        path: Walk::new(path),
        cycles,
    })
}

/// Rebuilds a walk from a decomposition after removing `drop[h]` copies of
/// cycle `h` (missing entries drop nothing). The walk is stitched together
/// Hierholzer-style, always taking the smallest unused successor.
pub fn reassemble(dec: &CycleDecomposition, drop: &[usize]) -> Result<Walk, WalkError> {
    if drop.len() > dec.cycles.len() {
        return Err(WalkError::NotReassemblable(format!(
            "{} drop counts for {} cycles",
            drop.len(),
            dec.cycles.len()
        )));
    }
    let mut edges = multiset_of(&dec.path);
    for (h, (c, z)) in dec.cycles.iter().enumerate() {
        let d = drop.get(h).copied().unwrap_or(0);
        if d > *z {
            return Err(WalkError::NotReassemblable(format!(
                "cannot drop {d} copies of cycle {c} taken {z} times"
            )));
        }
        for e in c.edges() {
            *edges.entry(e).or_default() += z - d;
        }
    }
    edges.retain(|_, m| *m > 0);
    let (i, j) = (dec.start(), dec.end());
    if edges.is_empty() && i == j {
        return Ok(Walk::new(vec![i]));
    }
    if !eulerian_walk_check(&edges, i, j) {
        return Err(WalkError::NotReassemblable(format!(
            "the remaining edges do not form a walk {i} -> {j}"
        )));
    }
    // Successors kept in descending order so `pop` yields the smallest.
    let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&(u, v), &m) in edges.iter().rev() {
        succ.entry(u).or_default().extend(std::iter::repeat_n(v, m));
    }
    let mut stack = vec![i];
    let mut out = Vec::new();
    while let Some(&v) = stack.last() {
        match succ.get_mut(&v).and_then(Vec::pop) {
            Some(w) => stack.push(w),
            None => out.push(stack.pop().unwrap()),
        }
    }
    out.reverse();
    Ok(Walk::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn debug() -> DecomposeOptions {
        DecomposeOptions {
            seed: None,
            debug: true,
        }
    }

    #[test]
    fn simple_path_is_base_case() {
        let w = Walk::new(vec![0, 1, 2]);
        let d = cycle_decompose(&w, 3, debug()).unwrap();
        assert_eq!(d.path, w);
        assert_eq!(d.ell(), 0);
    }

    #[test]
    fn one_detour() {
        let w = Walk::new(vec![0, 1, 0, 1, 2]);
        let d = cycle_decompose(&w, 3, debug()).unwrap();
        assert_eq!(d.path, Walk::new(vec![0, 1, 2]));
        assert_eq!(d.cycles, vec![(Walk::new(vec![0, 1, 0]), 1)]);
        assert_eq!(reassemble(&d, &[1]).unwrap(), Walk::new(vec![0, 1, 2]));
        assert_eq!(d.edge_multiset(), multiset_of(&w));
    }

    #[test]
    fn triangle_three_times() {
        // 3 -> 0, three laps of 0 -> 1 -> 2 -> 0, then 0 -> 4.
        let mut v = vec![3];
        for _ in 0..3 {
            v.extend([0, 1, 2]);
        }
        v.extend([0, 4]);
        let d = cycle_decompose(&Walk::new(v), 5, debug()).unwrap();
        assert_eq!(d.path, Walk::new(vec![3, 0, 4]));
        assert_eq!(d.cycles.len(), 1);
        assert_eq!(d.cycles[0].1, 3);
        assert!(d.cycles[0].0.is_simple_cycle());
    }

    #[test]
    fn eulerian_conditions() {
        let m = |es: &[(usize, usize)]| {
            let mut out = EdgeMultiset::new();
            for &e in es {
                *out.entry(e).or_default() += 1;
            }
            out
        };
        assert!(eulerian_walk_check(&m(&[(0, 1), (1, 2)]), 0, 2));
        assert!(!eulerian_walk_check(&m(&[(0, 1), (2, 3)]), 0, 1));
        let tri = m(&[(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)]);
        assert!(eulerian_walk_check(&tri, 0, 0));
        assert!(!eulerian_walk_check(&tri, 0, 1));
    }

    #[test]
    fn disconnected_rejected() {
        let mut m = EdgeMultiset::new();
        m.insert((0, 1), 1);
        m.insert((2, 3), 1);
        assert!(matches!(
            cycle_decompose_edges(&m, 0, 1, debug()),
            Err(WalkError::InvalidWalk(_))
        ));
    }

    #[test]
    fn reassemble_variants() {
        let w = Walk::new(vec![0, 1, 0, 1, 2]);
        let d = cycle_decompose(&w, 3, debug()).unwrap();
        let full = reassemble(&d, &[]).unwrap();
        assert_eq!(multiset_of(&full), multiset_of(&w));
        assert_eq!((full.start(), full.end()), (0, 2));
        assert!(reassemble(&d, &[2]).is_err());

        // Dropping the only cycle of a closed walk leaves the bare start vertex.
        let closed = cycle_decompose(&Walk::new(vec![1, 2, 1]), 3, debug()).unwrap();
        assert_eq!(reassemble(&closed, &[1]).unwrap(), Walk::new(vec![1]));
    }

    #[test]
    fn self_loops_are_cycles() {
        let w = Walk::new(vec![0, 0, 0, 1, 1]);
        let d = cycle_decompose(&w, 2, debug()).unwrap();
        assert_eq!(d.path, Walk::new(vec![0, 1]));
        assert_eq!(
            d.cycles,
            vec![(Walk::new(vec![0, 0]), 2), (Walk::new(vec![1, 1]), 1)]
        );
    }

    #[test]
    fn seeded_extraction_is_reproducible() {
        let w = Walk::new(vec![0, 1, 2, 0, 2, 1, 0, 1, 2]);
        let opts = DecomposeOptions {
            seed: Some(9),
            debug: true,
        };
        let a = cycle_decompose(&w, 3, opts).unwrap();
        let b = cycle_decompose(&w, 3, opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_multiset(), multiset_of(&w));
    }
}
