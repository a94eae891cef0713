#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Matrix and vector with entries uniform in [-1, 1].
pub fn random_system(m: usize, n: usize, seed: u64) -> (DMatrix<f64>, DVector<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(m, n, |_, _| rng.random_range(-1.0..1.0));
    let b = DVector::from_fn(m, |_, _| rng.random_range(-1.0..1.0));
    (a, b)
}

/// Solution of `(AᵀA + λI) x = Aᵀb` by Cholesky, falling back to LU.
///
/// Wide operators use the equivalent `x = Aᵀ(AAᵀ + λI)⁻¹b`: the n × n
/// system has a null space of dimension n − m and its conditioning at small
/// λ would swamp the comparison.
pub fn normal_equations_solve(a: &DMatrix<f64>, b: &DVector<f64>, lambda: f64) -> DVector<f64> {
    let (m, n) = a.shape();
    if m < n {
        let gram = a * a.transpose() + DMatrix::identity(m, m) * lambda;
        return a.transpose() * spd_solve(gram, b.clone());
    }
    let gram = a.transpose() * a + DMatrix::identity(n, n) * lambda;
    spd_solve(gram, a.transpose() * b)
}

fn spd_solve(gram: DMatrix<f64>, rhs: DVector<f64>) -> DVector<f64> {
    match gram.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => gram
            .lu()
            .solve(&rhs)
            .expect("normal equations are nonsingular"),
    }
}

/// Squared residual and squared norm of the normal-equations solution.
pub fn oracle_norms(a: &DMatrix<f64>, b: &DVector<f64>, lambda: f64) -> (f64, f64) {
    let x = normal_equations_solve(a, b, lambda);
    ((a * &x - b).norm_squared(), x.norm_squared())
}

pub fn relative_diff(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}
