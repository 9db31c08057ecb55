use alloc::vec::Vec;

use super::{OrthonormalBasis, RealMatrix, RealSymMatrix};
use crate::{Error, Result};

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
const PD_TOL: f64 = 1e-12;

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: OrthonormalBasis<f64>,
}

impl SymEigen {
    /// `V · diag(f(λ)) · Vᵀ`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> RealSymMatrix {
        let n = self.values.len();
        let vs = self.vectors.vectors();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let m = RealMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| vs[k][i] * fl[k] * vs[k][j]).sum()
        });
        RealSymMatrix::symmetrize(m)
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps until the off-diagonal Frobenius norm falls below `1e-14·scale`.
pub fn sym_eig(a: &RealSymMatrix) -> Result<SymEigen> {
    let n = a.dim();
    let scale = a.scale();
    let mut m = a.as_matrix().clone();
    let mut v = RealMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= OFF_DIAGONAL_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if libm::fabs(theta) > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                rotate_columns(&mut m, p, q, c, s);
                rotate_rows(&mut m, p, q, c, s);
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                rotate_columns(&mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > OFF_DIAGONAL_TOL * scale {
        return Err(Error::NoConvergence {
            routine: "jacobi",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&k| m[(k, k)]).collect();
    let vectors = order.iter().map(|&k| v.column(k)).collect();
    Ok(SymEigen {
        values,
        vectors: OrthonormalBasis::from_orthonormal(n, vectors),
    })
}

fn off_diagonal_norm(m: &RealMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    libm::sqrt(s)
}

fn rotate_columns(m: &mut RealMatrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m.rows() {
        let (x, y) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * x - s * y;
        m[(k, q)] = s * x + c * y;
    }
}

fn rotate_rows(m: &mut RealMatrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m.cols() {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * x - s * y;
        m[(q, k)] = s * x + c * y;
    }
}

/// `a^{-1/2}` for symmetric positive definite `a`.
///
/// Fails with [`Error::NotPositiveDefinite`] when the smallest eigenvalue is
/// at most `1e-12·scale`.
pub fn spd_inv_sqrt(a: &RealSymMatrix) -> Result<RealSymMatrix> {
    let eig = sym_eig(a)?;
    let min = eig.values.first().copied().unwrap_or(1.0);
    if min <= PD_TOL * a.scale() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok(eig.apply_fn(|l| 1.0 / libm::sqrt(l)))
}
