use alloc::vec::Vec;

use num_complex::Complex64;

use super::{tolerance_scale, ComplexMatrix, Matrix, OrthonormalBasis, RealMatrix};
use crate::Result;

/// Rank tolerance: singular values at most `NULL_SPACE_TOL·scale` count as zero.
pub const NULL_SPACE_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// One-sided Jacobi SVD: returns the singular values (one per column, not
/// sorted) and the matching right singular vectors.
fn one_sided_jacobi(a: &RealMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.cols();
    // columns of U and V stored contiguously
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for (a, b) in u[p].iter().zip(&u[q]) {
                    alpha += a * a;
                    beta += b * b;
                    gamma += a * b;
                }
                if gamma == 0.0 || libm::fabs(gamma) <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_pair(&mut u, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = u
        .iter()
        .map(|col| libm::sqrt(col.iter().map(|x| x * x).sum()))
        .collect();
    (sigma, v)
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Singular values in descending order.
pub fn singular_values(a: &RealMatrix) -> Vec<f64> {
    let (mut s, _) = one_sided_jacobi(a);
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Orthonormal basis of `{ v : ‖a·v‖ ≤ 1e-10·scale }` for a real, possibly
/// rectangular matrix.
pub fn null_space(a: &RealMatrix) -> OrthonormalBasis<f64> {
    let n = a.cols();
    if a.rows() == 0 {
        return OrthonormalBasis::from_orthonormal(n, (0..n).map(|j| unit(n, j)).collect());
    }
    let tol = NULL_SPACE_TOL * tolerance_scale(a.frobenius_norm());
    let (sigma, v) = one_sided_jacobi(a);
    let vectors = sigma
        .iter()
        .zip(v)
        .filter(|(s, _)| **s <= tol)
        .map(|(_, v)| v)
        .collect();
    OrthonormalBasis::from_orthonormal(n, vectors)
}

/// Complex null space via the real embedding `[[Re, −Im], [Im, Re]]`.
///
/// Every complex null direction `z` shows up twice in the embedding (as `z`
/// and `jz`); a pivoted Gram–Schmidt pass over the lifted vectors keeps one
/// complex direction per pair.
pub fn null_space_complex(a: &ComplexMatrix) -> OrthonormalBasis<Complex64> {
    let n = a.cols();
    let real = null_space(&a.realify());
    let lifted: Vec<Vec<Complex64>> = real
        .vectors()
        .iter()
        .map(|r| (0..n).map(|i| Complex64::new(r[i], r[n + i])).collect())
        .collect();
    OrthonormalBasis::orthonormalize(n, &lifted, 1e-6)
}

/// Intersection of two subspaces of the same ambient space, as the null
/// space of the stacked projector complements `[I − P_a; I − P_b]`.
pub fn subspace_intersection(
    a: &OrthonormalBasis<f64>,
    b: &OrthonormalBasis<f64>,
) -> Result<OrthonormalBasis<f64>> {
    let n = a.ambient_dim();
    let id = Matrix::identity(n);
    let ca = id.try_sub(&a.projector())?;
    let cb = id.try_sub(&b.projector())?;
    Ok(null_space(&ca.vstack(&cb)?))
}

fn unit(n: usize, j: usize) -> Vec<f64> {
    (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()
}
