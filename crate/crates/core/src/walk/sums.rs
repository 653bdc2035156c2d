use rayon::prelude::*;

use super::WalkError;
use crate::engine::Matrix;
use crate::semiring::Semiring;

/// Default cap on `n^h`, the walk count a query may enumerate.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

fn check_budget(n: usize, h: usize, budget: u64) -> Result<(), WalkError> {
    let count = u32::try_from(h)
        .ok()
        .and_then(|h| (n as u64).checked_pow(h));
    match count {
        Some(c) if c <= budget => Ok(()),
        _ => Err(WalkError::EnumerationTooLarge { n, h, budget }),
    }
}

fn extend<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    v: usize,
    j: usize,
    remaining: usize,
    prefix: &S::Elem,
    total: &mut S::Elem,
) {
    if remaining == 0 {
        if v == j {
            *total = s.add(total, prefix);
        }
        return;
    }
    for (w, label) in a.row(v) {
        let next = s.mul(prefix, label);
        // A zero prefix annihilates every completion.
        if s.is_zero(&next) {
            continue;
        }
        extend(s, a, w, j, remaining - 1, &next, total);
    }
}

/// `⊕` of `Φ(W)` over all walks from `i` to `j` with exactly `h` edges,
/// enumerated one by one. The first edge choices run in parallel and their
/// partial sums are combined in ascending order.
pub fn walk_sum_exact<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    i: usize,
    j: usize,
    h: usize,
    budget: u64,
) -> Result<S::Elem, WalkError> {
    let n = a.n();
    if i >= n || j >= n {
        return Err(WalkError::InvalidWalk(format!(
            "endpoints ({i}, {j}) outside 0..{n}"
        )));
    }
    check_budget(n, h, budget)?;
    if h == 0 {
        return Ok(if i == j { s.one() } else { s.zero() });
    }
    let partials: Vec<S::Elem> = a
        .row(i)
        .into_par_iter()
        .map(|(w, label)| {
            let mut total = s.zero();
            if !s.is_zero(label) {
                extend(s, a, w, j, h - 1, label, &mut total);
            }
            total
        })
        .collect();
    Ok(s.sum(&partials))
}

/// `⊕` of [`walk_sum_exact`] over `g = 0..=h`.
pub fn walk_sum_upto<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    i: usize,
    j: usize,
    h: usize,
    budget: u64,
) -> Result<S::Elem, WalkError> {
    let mut total = s.zero();
    for g in 0..=h {
        total = s.add(&total, &walk_sum_exact(s, a, i, j, g, budget)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, TropValue, Tropical};

    #[test]
    fn zero_hops() {
        let s = Boolean;
        let a = Matrix::zeros(&s, 2);
        assert!(walk_sum_exact(&s, &a, 1, 1, 0, DEFAULT_BUDGET).unwrap());
        assert!(!walk_sum_exact(&s, &a, 0, 1, 0, DEFAULT_BUDGET).unwrap());
        assert!(walk_sum_upto(&s, &a, 0, 0, 0, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn boolean_path() {
        let s = Boolean;
        let mut a = Matrix::zeros(&s, 3);
        a.set(0, 1, true);
        a.set(1, 2, true);
        assert!(walk_sum_exact(&s, &a, 0, 2, 2, DEFAULT_BUDGET).unwrap());
        assert!(!walk_sum_exact(&s, &a, 0, 2, 1, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn two_cycle_upto() {
        let s = Boolean;
        let a = Matrix::from_rows(&s, vec![vec![false, true], vec![true, false]]);
        assert!(walk_sum_upto(&s, &a, 0, 1, 3, DEFAULT_BUDGET).unwrap());
        assert!(!walk_sum_exact(&s, &a, 0, 1, 2, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn triangle_closed_walk() {
        let s = Tropical;
        let w = |v| TropValue::int(v);
        let inf = TropValue::Inf;
        let a = Matrix::from_rows(
            &s,
            vec![
                vec![inf.clone(), w(1), inf.clone()],
                vec![inf.clone(), inf.clone(), w(2)],
                vec![w(3), inf.clone(), inf],
            ],
        );
        assert_eq!(
            walk_sum_exact(&s, &a, 0, 0, 3, DEFAULT_BUDGET).unwrap(),
            w(6)
        );
    }

    #[test]
    fn budget_guard() {
        let s = Boolean;
        let a = Matrix::zeros(&s, 4);
        assert!(matches!(
            walk_sum_exact(&s, &a, 0, 0, 11, DEFAULT_BUDGET),
            Err(WalkError::EnumerationTooLarge { .. })
        ));
        assert!(walk_sum_exact(&s, &a, 0, 0, 10, DEFAULT_BUDGET).is_ok());
        assert!(walk_sum_exact(&s, &a, 0, 0, 3, 10).is_err());
    }
}
