use rayon::prelude::*;

use crate::semiring::Semiring;

/// Systems with more atoms than this are stored sparsely by default.
pub const DENSE_LIMIT: usize = 64;

/// Row count from which matrix-vector products are split across threads.
const PARALLEL_ROWS: usize = 256;

#[derive(Debug, Clone)]
enum Repr<E> {
    Dense(Vec<E>),
    /// Per row, the nonzero entries sorted by column.
    Sparse(Vec<Vec<(usize, E)>>),
}

/// Square matrix over a semiring. Entries not stored are the semiring zero.
#[derive(Debug, Clone)]
pub struct Matrix<E> {
    n: usize,
    zero: E,
    repr: Repr<E>,
}

impl<E> Matrix<E> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The semiring zero that absent entries stand for.
    pub fn zero(&self) -> &E {
        &self.zero
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        match &self.repr {
            Repr::Dense(data) => &data[i * self.n + j],
            Repr::Sparse(rows) => match rows[i].binary_search_by_key(&j, |(c, _)| *c) {
                Ok(k) => &rows[i][k].1,
                Err(_) => &self.zero,
            },
        }
    }
}

impl<E: Clone + Eq + Send + Sync> Matrix<E> {
    pub fn zeros<S: Semiring<Elem = E>>(s: &S, n: usize) -> Self {
        Self::zeros_with_limit(s, n, DENSE_LIMIT)
    }

    /// Dense when `n <= dense_limit`, sparse otherwise.
    pub fn zeros_with_limit<S: Semiring<Elem = E>>(s: &S, n: usize, dense_limit: usize) -> Self {
        let zero = s.zero();
        let repr = if n <= dense_limit {
            Repr::Dense(vec![zero.clone(); n * n])
        } else {
            Repr::Sparse(vec![Vec::new(); n])
        };
        Matrix { n, zero, repr }
    }

    pub fn identity<S: Semiring<Elem = E>>(s: &S, n: usize) -> Self {
        let mut m = Self::zeros(s, n);
        for i in 0..n {
            m.set(i, i, s.one());
        }
        m
    }

    pub fn from_rows<S: Semiring<Elem = E>>(s: &S, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(s, n);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of range");
        match &mut self.repr {
            Repr::Dense(data) => data[i * self.n + j] = value,
            Repr::Sparse(rows) => {
                let row = &mut rows[i];
                match row.binary_search_by_key(&j, |(c, _)| *c) {
                    Ok(k) if value == self.zero => {
                        row.remove(k);
                    }
                    Ok(k) => row[k].1 = value,
                    Err(_) if value == self.zero => {}
                    Err(k) => row.insert(k, (j, value)),
                }
            }
        }
    }

    /// `A[i][j] ← A[i][j] ⊕ value`.
    pub fn accumulate<S: Semiring<Elem = E>>(&mut self, s: &S, i: usize, j: usize, value: &E) {
        let next = s.add(self.get(i, j), value);
        self.set(i, j, next);
    }

    /// Nonzero entries of row `i` in ascending column order.
    pub fn row(&self, i: usize) -> Vec<(usize, &E)> {
        match &self.repr {
            Repr::Dense(data) => data[i * self.n..(i + 1) * self.n]
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != self.zero)
                .collect(),
            Repr::Sparse(rows) => rows[i].iter().map(|(j, v)| (*j, v)).collect(),
        }
    }

    /// All nonzero entries in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, &E)> {
        (0..self.n)
            .flat_map(|i| self.row(i).into_iter().map(move |(j, v)| (i, j, v)))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros().len()
    }

    fn row_dot<S: Semiring<Elem = E>>(&self, s: &S, i: usize, x: &[E]) -> E {
        self.row(i)
            .into_iter()
            .fold(s.zero(), |acc, (j, a)| s.add(&acc, &s.mul(a, &x[j])))
    }

    /// `A x`, with row reductions spread over threads for large systems.
    pub fn mul_vec<S: Semiring<Elem = E>>(&self, s: &S, x: &[E]) -> Vec<E> {
        assert_eq!(x.len(), self.n);
        if self.n >= PARALLEL_ROWS {
            (0..self.n)
                .into_par_iter()
                .map(|i| self.row_dot(s, i, x))
                .collect()
        } else {
            (0..self.n).map(|i| self.row_dot(s, i, x)).collect()
        }
    }

    /// `self · other`, summing `self[i][k] ⊗ other[k][j]` over `k` in ascending order.
    pub fn mul<S: Semiring<Elem = E>>(&self, s: &S, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, other.n);
        let mut out = Matrix {
            n: self.n,
            zero: self.zero.clone(),
            repr: if self.is_sparse() {
                Repr::Sparse(vec![Vec::new(); self.n])
            } else {
                Repr::Dense(vec![self.zero.clone(); self.n * self.n])
            },
        };
        for i in 0..self.n {
            let left = self.row(i);
            for j in 0..self.n {
                let v = left.iter().fold(s.zero(), |acc, (k, a)| {
                    s.add(&acc, &s.mul(a, other.get(*k, j)))
                });
                out.set(i, j, v);
            }
        }
        out
    }

    /// Entrywise `⊕`.
    pub fn add<S: Semiring<Elem = E>>(&self, s: &S, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (i, j, v) in other.nonzeros() {
            out.accumulate(s, i, j, v);
        }
        out
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn restrict<S: Semiring<Elem = E>>(&self, s: &S, keep: &[usize]) -> Matrix<E> {
        let mut out = Matrix::zeros(s, keep.len());
        for (new_i, &i) in keep.iter().enumerate() {
            for (new_j, &j) in keep.iter().enumerate() {
                let v = self.get(i, j);
                if *v != self.zero {
                    out.set(new_i, new_j, v.clone());
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl<E: PartialEq> PartialEq for Matrix<E> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

impl<E: Eq> Eq for Matrix<E> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, TropValue, Tropical};

    #[test]
    fn dense_and_sparse_agree() {
        let s = Tropical;
        let mut d = Matrix::zeros_with_limit(&s, 3, 64);
        let mut sp = Matrix::zeros_with_limit(&s, 3, 0);
        assert!(sp.is_sparse() && !d.is_sparse());
        for (i, j, w) in [(0, 1, 2), (1, 2, 3), (2, 0, 1), (0, 1, 1)] {
            d.accumulate(&s, i, j, &TropValue::int(w));
            sp.accumulate(&s, i, j, &TropValue::int(w));
        }
        assert_eq!(d, sp);
        assert_eq!(*sp.get(0, 1), TropValue::int(1));
        assert_eq!(sp.nnz(), 3);
        let x = vec![TropValue::int(0), TropValue::Inf, TropValue::int(5)];
        assert_eq!(d.mul_vec(&s, &x), sp.mul_vec(&s, &x));
        assert_eq!(d.mul(&s, &d), sp.mul(&s, &sp));
    }

    #[test]
    fn setting_zero_removes_sparse_entry() {
        let mut m = Matrix::zeros_with_limit(&Boolean, 2, 0);
        m.set(0, 1, true);
        m.set(0, 1, false);
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn identity_is_neutral() {
        let s = Boolean;
        let a = Matrix::from_rows(&s, vec![vec![false, true], vec![true, true]]);
        let id = Matrix::identity(&s, 2);
        assert_eq!(a.mul(&s, &id), a);
        assert_eq!(id.mul(&s, &a), a);
    }

    #[test]
    fn large_products_use_rows_in_parallel() {
        let s = Boolean;
        let n = PARALLEL_ROWS + 3;
        let mut a = Matrix::zeros(&s, n);
        for i in 0..n - 1 {
            a.set(i, i + 1, true);
        }
        let mut x = vec![false; n];
        x[n - 1] = true;
        let y = a.mul_vec(&s, &x);
        assert!(y[n - 2] && y.iter().filter(|v| **v).count() == 1);
    }
}
