//! Naive evaluation of grounded systems and matrix power sums.

mod eval;
mod matrix;
mod system;

pub use eval::{
    matrix_power, matrix_power_sum, matrix_power_sum_horner, matrix_stability_index,
    naive_eval_general, naive_eval_linear, IterationTrace, MatrixPowerSum, Mode,
};
pub use matrix::{Matrix, DENSE_LIMIT};
pub use system::{LinearSystem, Monomial, PolySystem};
