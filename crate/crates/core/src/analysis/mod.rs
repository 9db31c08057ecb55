//! Spectral synchronization tests.
//!
//! The general test builds the complex Laplacian `Λ` of a [`NetworkSpec`]
//! and checks the sign of `Re λ₂(Λ)`. Structural special cases reduce to
//! smaller pencils: velocity-only coupling (`λ₂(B)`), no inertial coupling
//! (`B + jK`), edge-isolated inertial/restorative graphs (`B + j(K − M)`)
//! and no restorative coupling (`B − jM`). A connected dissipative graph is
//! sufficient on its own.
//!
//! [`kernel_oracle`] decides the same question along an independent route:
//! it searches for a non-consensus `ξ` with `Bξ = 0` and
//! `(K_a − ω²M_a)ξ = 0`, i.e. a persistent undamped mode.

mod oracle;
mod report;
mod split;

use core::fmt;

use num_complex::Complex64;

use crate::graphs::{are_edge_isolated, CouplingGraph};
use crate::linalg::{
    complex_eigenvalues, spd_inv_sqrt, sym_eig, ComplexMatrix, RealSymMatrix, Spectrum,
};
use crate::{Error, Result};

pub use oracle::{kernel_oracle, KernelWitness, CONSENSUS_DISTANCE_MIN};
pub use report::{analyze, structure, AnalysisReport, Structure};
pub use split::make_pq_split_instance;

/// Relative width of the band around the imaginary axis: real parts with
/// `|Re λ| < SYNC_BAND·(1 + ‖A‖_F)` are classified as zero.
pub const SYNC_BAND: f64 = 1e-8;

/// `ε_sync` for a matrix of Frobenius norm `frobenius`.
pub fn sync_band(frobenius: f64) -> f64 {
    SYNC_BAND * (1.0 + frobenius)
}

/// A verdict is robust when `Re λ₂` sits at least this factor above the
/// band (synchronizing) or this factor inside it (not synchronizing).
pub const ROBUSTNESS_FACTOR: f64 = 100.0;

/// Inertial, dissipative and restorative coupling graphs plus the
/// oscillator inertia `m0` and stiffness `k0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkSpec {
    inertial: CouplingGraph,
    dissipative: CouplingGraph,
    restorative: CouplingGraph,
    m0: f64,
    k0: f64,
}

impl NetworkSpec {
    pub fn new(
        inertial: CouplingGraph,
        dissipative: CouplingGraph,
        restorative: CouplingGraph,
        m0: f64,
        k0: f64,
    ) -> Result<Self> {
        let q = inertial.q();
        for g in [&dissipative, &restorative] {
            if g.q() != q {
                return Err(Error::DimensionMismatch {
                    expected: q,
                    found: g.q(),
                });
            }
        }
        check_positive("m0", m0)?;
        check_positive("k0", k0)?;
        Ok(Self {
            inertial,
            dissipative,
            restorative,
            m0,
            k0,
        })
    }

    /// Same coupling with different oscillator parameters.
    pub fn with_parameters(&self, m0: f64, k0: f64) -> Result<Self> {
        Self::new(
            self.inertial.clone(),
            self.dissipative.clone(),
            self.restorative.clone(),
            m0,
            k0,
        )
    }

    pub fn q(&self) -> usize {
        self.inertial.q()
    }

    pub fn inertial(&self) -> &CouplingGraph {
        &self.inertial
    }

    pub fn dissipative(&self) -> &CouplingGraph {
        &self.dissipative
    }

    pub fn restorative(&self) -> &CouplingGraph {
        &self.restorative
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Uncoupled angular frequency `√(k0/m0)`.
    pub fn omega0(&self) -> f64 {
        libm::sqrt(self.k0 / self.m0)
    }

    /// `M_a = M + m0·I`.
    pub fn augmented_inertia(&self) -> RealSymMatrix {
        self.inertial.laplacian().shifted(self.m0)
    }

    /// `K_a = K + k0·I`.
    pub fn augmented_stiffness(&self) -> RealSymMatrix {
        self.restorative.laplacian().shifted(self.k0)
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

/// `Λ = D + jR − jω₀²I` with `D = M_a^{-1/2} B M_a^{-1/2}` and
/// `R = M_a^{-1/2} K_a M_a^{-1/2}`.
#[derive(Clone, Debug)]
pub struct ComplexLaplacian {
    pub lambda: ComplexMatrix,
    pub d: RealSymMatrix,
    pub r: RealSymMatrix,
    pub omega0_sq: f64,
}

pub fn build_lambda(net: &NetworkSpec) -> Result<ComplexLaplacian> {
    let inv_sqrt = spd_inv_sqrt(&net.augmented_inertia())?;
    let d = inv_sqrt.sandwich(&net.dissipative.laplacian())?;
    let r = inv_sqrt.sandwich(&net.augmented_stiffness())?;
    let omega0_sq = net.k0 / net.m0;
    let lambda = ComplexMatrix::from_fn(net.q(), net.q(), |i, j| {
        let shift = if i == j { omega0_sq } else { 0.0 };
        Complex64::new(d[(i, j)], r[(i, j)] - shift)
    });
    Ok(ComplexLaplacian {
        lambda,
        d,
        r,
        omega0_sq,
    })
}

/// Which test produced a [`SyncVerdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    General,
    VelocityOnly,
    PositionVelocity,
    EdgeIsolated,
    AccelVelocity,
    ConnectedBSufficient,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::General => "general",
            Method::VelocityOnly => "velocity_only",
            Method::PositionVelocity => "position_velocity",
            Method::EdgeIsolated => "edge_isolated",
            Method::AccelVelocity => "accel_velocity",
            Method::ConnectedBSufficient => "connected_B_sufficient",
        }
    }

    /// Every method except the connected-B shortcut is an exact
    /// characterization.
    pub fn is_iff(self) -> bool {
        self != Method::ConnectedBSufficient
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one synchronization test.
///
/// `lambda2` and `margin` are `None` for single-node networks, which
/// synchronize vacuously. `conclusive` is false only for the connected-B
/// shortcut when the dissipative graph is disconnected.
#[derive(Clone, Debug, PartialEq)]
pub struct SyncVerdict {
    pub synchronizes: bool,
    pub conclusive: bool,
    pub spectrum: Spectrum,
    pub lambda2: Option<Complex64>,
    pub margin: Option<f64>,
    pub method: Method,
    pub parameter_dependent: bool,
}

impl SyncVerdict {
    fn from_spectrum(spectrum: Spectrum, method: Method, parameter_dependent: bool) -> Self {
        let lambda2 = spectrum.lambda(2);
        let margin = spectrum.classified_re(2);
        Self {
            synchronizes: margin.is_none_or(|m| m > 0.0),
            conclusive: true,
            spectrum,
            lambda2,
            margin,
            method,
            parameter_dependent,
        }
    }

    /// False when `Re λ₂` lies within a factor [`ROBUSTNESS_FACTOR`] of the
    /// band edge, where rounding can flip the verdict.
    pub fn is_robust(&self) -> bool {
        let Some(l2) = self.lambda2 else {
            return true;
        };
        let band = self.spectrum.zero_band();
        if self.synchronizes {
            l2.re > ROBUSTNESS_FACTOR * band
        } else {
            libm::fabs(l2.re) <= band / ROBUSTNESS_FACTOR
        }
    }
}

fn second_eigenvalue_verdict(
    matrix: &ComplexMatrix,
    method: Method,
    parameter_dependent: bool,
) -> Result<SyncVerdict> {
    let band = sync_band(matrix.frobenius_norm());
    let spectrum = complex_eigenvalues(matrix)?.with_zero_band(band);
    Ok(SyncVerdict::from_spectrum(
        spectrum,
        method,
        parameter_dependent,
    ))
}

/// Synchronization iff `Re λ₂(Λ) > ε_sync`.
pub fn test_general(net: &NetworkSpec) -> Result<SyncVerdict> {
    let lap = build_lambda(net)?;
    let dependent = !are_edge_isolated(&net.inertial, &net.restorative)?;
    second_eigenvalue_verdict(&lap.lambda, Method::General, dependent)
}

/// Dissipative coupling only: synchronization iff `λ₂(B) > ε_sync`.
pub fn test_velocity_only(b: &CouplingGraph, m0: f64, k0: f64) -> Result<SyncVerdict> {
    check_positive("m0", m0)?;
    check_positive("k0", k0)?;
    let lap = b.laplacian();
    let eig = sym_eig(&lap)?;
    let band = sync_band(lap.as_matrix().frobenius_norm());
    let values = eig.values.iter().map(|&l| Complex64::new(l, 0.0)).collect();
    Ok(SyncVerdict::from_spectrum(
        Spectrum::new(values, band),
        Method::VelocityOnly,
        false,
    ))
}

/// Dissipative and restorative coupling: iff `Re λ₂(B + jK) > ε_sync`.
pub fn test_position_velocity(
    b: &CouplingGraph,
    k: &CouplingGraph,
    m0: f64,
    k0: f64,
) -> Result<SyncVerdict> {
    let q = b.q();
    NetworkSpec::new(CouplingGraph::edgeless(q)?, b.clone(), k.clone(), m0, k0)?;
    let g = ComplexMatrix::from_parts(b.laplacian().as_matrix(), k.laplacian().as_matrix())?;
    second_eigenvalue_verdict(&g, Method::PositionVelocity, false)
}

/// Edge-isolated inertial and restorative graphs: iff
/// `Re λ₂(B + j(K − M)) > ε_sync`, independent of `(m0, k0)`.
pub fn test_edge_isolated(net: &NetworkSpec) -> Result<SyncVerdict> {
    if !are_edge_isolated(&net.inertial, &net.restorative)? {
        return Err(Error::NotEdgeIsolated);
    }
    let im = net
        .restorative
        .laplacian()
        .as_matrix()
        .try_sub(net.inertial.laplacian().as_matrix())?;
    let g = ComplexMatrix::from_parts(net.dissipative.laplacian().as_matrix(), &im)?;
    second_eigenvalue_verdict(&g, Method::EdgeIsolated, false)
}

/// Inertial and dissipative coupling: iff `Re λ₂(B − jM) > ε_sync`.
pub fn test_accel_velocity(
    m: &CouplingGraph,
    b: &CouplingGraph,
    m0: f64,
    k0: f64,
) -> Result<SyncVerdict> {
    let q = m.q();
    NetworkSpec::new(m.clone(), b.clone(), CouplingGraph::edgeless(q)?, m0, k0)?;
    let g = ComplexMatrix::from_parts(
        b.laplacian().as_matrix(),
        &m.laplacian().as_matrix().scaled(-1.0),
    )?;
    second_eigenvalue_verdict(&g, Method::AccelVelocity, false)
}

/// Sufficient condition: a connected dissipative graph forces
/// synchronization. A disconnected one leaves the question open
/// (`conclusive == false`); the attached spectrum is that of `B`.
pub fn test_connected_b(net: &NetworkSpec) -> Result<SyncVerdict> {
    let mut v = test_velocity_only(&net.dissipative, net.m0, net.k0)?;
    let connected = net.dissipative.is_connected();
    v.method = Method::ConnectedBSufficient;
    v.synchronizes = connected;
    v.conclusive = connected;
    Ok(v)
}
