use alloc::vec::Vec;

use num_complex::Complex64;

use super::NetworkSpec;
use crate::linalg::{
    distance_from_consensus, norm, null_space, spd_inv_sqrt, subspace_intersection, sym_eig,
    OrthonormalBasis,
};
use crate::Result;

/// Minimum distance from `span{1}` for a unit vector to count as a genuine
/// disagreement direction.
pub const CONSENSUS_DISTANCE_MIN: f64 = 1e-6;

/// Pencil eigenvalues closer than this (times `scale`) share an eigenspace.
const CLUSTER_TOL: f64 = 1e-7;

/// A persistent non-synchronous mode `Re(e^{jωt} ξ)`.
///
/// `ξ` is in node coordinates, has unit norm, satisfies `Bξ = 0` and
/// `(K_a − ω²M_a)ξ = 0`, and is not a multiple of the ones vector.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelWitness {
    pub omega: f64,
    pub xi: Vec<Complex64>,
    /// `ω² − ω₀²`: the witness corresponds to the eigenvalue `jμ` of `Λ`.
    pub mu: f64,
    pub residual_pencil: f64,
    pub residual_b: f64,
    pub distance_from_consensus: f64,
}

/// Searches for a kernel witness, independently of the eigenvalues of `Λ`.
///
/// The symmetric-definite pencil `(K_a, M_a)` is diagonalized through
/// `R = M_a^{-1/2} K_a M_a^{-1/2}`. Each cluster of equal eigenvalues `ω²`
/// spans an eigenspace `M_a^{-1/2}·span{η}`; its intersection with
/// `null(B)` is checked for a direction away from consensus.
pub fn kernel_oracle(net: &NetworkSpec) -> Result<Option<KernelWitness>> {
    let q = net.q();
    if q < 2 {
        return Ok(None);
    }
    let m_a = net.augmented_inertia();
    let k_a = net.augmented_stiffness();
    let b = net.dissipative().laplacian();
    let inv_sqrt = spd_inv_sqrt(&m_a)?;
    let r = inv_sqrt.sandwich(&k_a)?;
    let eig = sym_eig(&r)?;

    let null_b = null_space(b.as_matrix());
    if null_b.len() < 2 {
        // only the consensus line can survive
        return Ok(None);
    }

    let cluster_tol = CLUSTER_TOL * r.scale();
    let mut start = 0;
    while start < q {
        let mut end = start + 1;
        while end < q && eig.values[end] - eig.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let candidates: Vec<Vec<f64>> = eig.vectors.vectors()[start..end]
            .iter()
            .map(|eta| inv_sqrt.as_matrix().mul_vec(eta))
            .collect::<Result<_>>()?;
        let eigenspace = OrthonormalBasis::orthonormalize(q, &candidates, 1e-12);
        let common = subspace_intersection(&eigenspace, &null_b)?;
        let best = common
            .vectors()
            .iter()
            .map(|w| (distance_from_consensus(w), w))
            .max_by(|x, y| x.0.total_cmp(&y.0));
        if let Some((dist, w)) = best {
            if dist >= CONSENSUS_DISTANCE_MIN {
                return Ok(Some(witness(net, w)?));
            }
        }
        start = end;
    }
    Ok(None)
}

fn witness(net: &NetworkSpec, w: &[f64]) -> Result<KernelWitness> {
    let n = norm(w);
    let xi: Vec<f64> = w.iter().map(|x| x / n).collect();
    let m_a = net.augmented_inertia();
    let k_a = net.augmented_stiffness();
    let b = net.dissipative().laplacian();
    let kx = k_a.as_matrix().mul_vec(&xi)?;
    let mx = m_a.as_matrix().mul_vec(&xi)?;
    let omega_sq = dot(&xi, &kx) / dot(&xi, &mx);
    let pencil: Vec<f64> = kx.iter().zip(&mx).map(|(k, m)| k - omega_sq * m).collect();
    let bx = b.as_matrix().mul_vec(&xi)?;
    Ok(KernelWitness {
        omega: libm::sqrt(omega_sq),
        mu: omega_sq - net.k0() / net.m0(),
        residual_pencil: norm(&pencil),
        residual_b: norm(&bx),
        distance_from_consensus: distance_from_consensus(&xi),
        xi: xi.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
