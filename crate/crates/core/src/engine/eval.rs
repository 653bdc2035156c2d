use super::matrix::Matrix;
use super::system::{LinearSystem, PolySystem};
use crate::semiring::Semiring;

/// How each step combines with the previous state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// `x ← f(x)`.
    #[default]
    Plain,
    /// `x ← x ⊕ f(x)`.
    Inflationary,
}

/// The states `x^(0) = 0, x^(1), …` of a naive iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace<E> {
    pub states: Vec<Vec<E>>,
    /// Smallest `q` with `x^(q) = x^(q+1)`; `None` when the cap was hit first.
    pub index: Option<usize>,
    pub capped: bool,
    /// Number of applications of `f` performed.
    pub steps: usize,
}

impl<E: Clone> IterationTrace<E> {
    /// Index in the power-sum convention: `x^(q) = A^(q-1) b`, so a trace
    /// index `q ≥ 1` corresponds to power-sum index `q - 1`.
    pub fn power_sum_index(&self) -> Option<usize> {
        self.index.map(|q| q.saturating_sub(1))
    }

    pub fn fixpoint(&self) -> Option<&[E]> {
        self.index.map(|q| self.states[q].as_slice())
    }

    pub fn last(&self) -> &[E] {
        self.states.last().expect("a trace always holds x^(0)")
    }
}

fn iterate<E, F>(zero: Vec<E>, cap: usize, mut step: F) -> IterationTrace<E>
where
    E: Clone + Eq,
    F: FnMut(&[E]) -> Vec<E>,
{
    let mut states = vec![zero];
    for q in 0..=cap {
        let next = step(&states[q]);
        let stable = next == states[q];
        states.push(next);
        if stable {
            return IterationTrace {
                states,
                index: Some(q),
                capped: false,
                steps: q + 1,
            };
        }
    }
    IterationTrace {
        states,
        index: None,
        capped: true,
        steps: cap + 1,
    }
}

fn combine<S: Semiring>(s: &S, mode: Mode, prev: &[S::Elem], next: Vec<S::Elem>) -> Vec<S::Elem> {
    match mode {
        Mode::Plain => next,
        Mode::Inflationary => prev.iter().zip(&next).map(|(x, y)| s.add(x, y)).collect(),
    }
}

/// Iterates `x ← Ax ⊕ b` from zero until two adjacent states agree, checking
/// at most `cap + 1` steps.
pub fn naive_eval_linear<S: Semiring>(
    s: &S,
    sys: &LinearSystem<S::Elem>,
    cap: usize,
    mode: Mode,
) -> IterationTrace<S::Elem> {
    iterate(vec![s.zero(); sys.n()], cap, |x| {
        let ax = sys.a.mul_vec(s, x);
        let fx = ax.iter().zip(&sys.b).map(|(l, r)| s.add(l, r)).collect();
        combine(s, mode, x, fx)
    })
}

/// Iterates `x ← f(x)` for a polynomial system, with the same stopping rule
/// as [`naive_eval_linear`].
pub fn naive_eval_general<S: Semiring>(
    s: &S,
    sys: &PolySystem<S::Elem>,
    cap: usize,
    mode: Mode,
) -> IterationTrace<S::Elem> {
    iterate(vec![s.zero(); sys.n()], cap, |x| {
        let fx = sys
            .rows
            .iter()
            .map(|row| {
                row.iter().fold(s.zero(), |acc, m| {
                    let term = m
                        .vars
                        .iter()
                        .fold(m.coeff.clone(), |t, &v| s.mul(&t, &x[v]));
                    s.add(&acc, &term)
                })
            })
            .collect();
        combine(s, mode, x, fx)
    })
}

/// `A^h`, with `A^0 = I` and `A^h = A^(h-1) · A`.
pub fn matrix_power<S: Semiring>(s: &S, a: &Matrix<S::Elem>, h: usize) -> Matrix<S::Elem> {
    let mut p = Matrix::identity(s, a.n());
    for _ in 0..h {
        p = p.mul(s, a);
    }
    p
}

/// `Σ_{h=0}^{k} A^h` with its `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPowerSum<E> {
    pub k: usize,
    pub value: Matrix<E>,
}

/// Sums the explicit powers `I ⊕ A ⊕ A² ⊕ … ⊕ A^k`. For a genuine semiring
/// this equals the Horner form `I ⊕ A·(…)`; over a carrier without
/// distributivity the two can differ and this is the walk-sum reading.
pub fn matrix_power_sum<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    k: usize,
) -> MatrixPowerSum<S::Elem> {
    let mut power = Matrix::identity(s, a.n());
    let mut value = power.clone();
    for _ in 0..k {
        power = power.mul(s, a);
        value = value.add(s, &power);
    }
    MatrixPowerSum { k, value }
}

/// The Horner recurrence `P(0) = I`, `P(k+1) = I ⊕ A·P(k)`.
pub fn matrix_power_sum_horner<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    k: usize,
) -> MatrixPowerSum<S::Elem> {
    let id = Matrix::identity(s, a.n());
    let mut value = id.clone();
    for _ in 0..k {
        value = id.add(s, &a.mul(s, &value));
    }
    MatrixPowerSum { k, value }
}

/// Smallest `k ≤ cap` with `A^(k) = A^(k+1)`.
pub fn matrix_stability_index<S: Semiring>(
    s: &S,
    a: &Matrix<S::Elem>,
    cap: usize,
) -> Option<usize> {
    let mut power = Matrix::identity(s, a.n());
    let mut sum = power.clone();
    for k in 0..=cap {
        power = power.mul(s, a);
        let next = sum.add(s, &power);
        if next == sum {
            return Some(k);
        }
        sum = next;
    }
    None
}
