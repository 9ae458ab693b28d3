//! Coxeter matrix and a power-iteration estimate of its spectral radius.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::PathAlgebra;
use crate::scalars::Matrix;

/// `Φ = -C^{-T} C` for the Cartan matrix `C` (`C[i][j]` = paths `i -> j`).
///
/// `C` is unitriangular up to reordering, so `Φ` is integral.
pub fn coxeter_matrix(alg: &PathAlgebra) -> Vec<Vec<i64>> {
    let c = Matrix::<BigRational>::from_i64_rows(&alg.cartan_matrix());
    let phi = c.transpose().solve(&c).expect("Cartan matrix is invertible").neg();
    (0..phi.rows())
        .map(|i| {
            (0..phi.cols())
                .map(|j| {
                    let q = phi.get(i, j);
                    assert!(q.is_integer(), "Coxeter matrix entry not integral");
                    q.to_integer().to_i64().expect("Coxeter entry fits i64")
                })
                .collect()
        })
        .collect()
}

/// `log ρ(M)` from the mean log-growth of `‖M^k v‖` over `steps` steps.
///
/// The start vector is generic enough to avoid invariant subspaces of the
/// small integer matrices used here. Converges like `O(log(steps)/steps)`
/// when the dominant Jordan block is nontrivial.
pub fn log_spectral_radius(m: &[Vec<i64>], steps: usize) -> f64 {
    let n = m.len();
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 + 1.0).sqrt() / 7.0).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n0 = norm(&v);
    v.iter_mut().for_each(|x| *x /= n0);
    let mut acc = 0.0;
    for _ in 0..steps {
        let w: Vec<f64> = m.iter().map(|row| row.iter().zip(&v).map(|(&a, b)| a as f64 * b).sum()).collect();
        let s = norm(&w);
        if s == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += s.ln();
        v = w.into_iter().map(|x| x / s).collect();
    }
    acc / steps as f64
}
