//! Seeded randomness for sampled checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::{Matrix, Vector};

pub type CheckRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CheckRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries drawn uniformly from `-2..=2`.
pub fn small_vector<F: Field, R: Rng>(field: &F, n: usize, rng: &mut R) -> Vector<F> {
    (0..n)
        .map(|_| field.from_i64(rng.random_range(-2..=2)))
        .collect()
}

pub fn small_matrix<F: Field, R: Rng>(
    field: &F,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Matrix<F> {
    let data = (0..rows * cols)
        .map(|_| field.from_i64(rng.random_range(-2..=2)))
        .collect();
    Matrix::from_vec(field, rows, cols, data).expect("shape")
}

/// Rejection-samples an invertible matrix.
pub fn invertible_matrix<F: Field, R: Rng>(
    field: &F,
    n: usize,
    rng: &mut R,
) -> (Matrix<F>, Matrix<F>) {
    loop {
        let m = small_matrix(field, n, n, rng);
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}
