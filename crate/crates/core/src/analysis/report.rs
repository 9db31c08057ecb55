use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    kernel_oracle, test_accel_velocity, test_connected_b, test_edge_isolated, test_general,
    test_position_velocity, test_velocity_only, KernelWitness, Method, NetworkSpec, SyncVerdict,
};
use crate::graphs::are_edge_isolated;
use crate::linalg::Spectrum;
use crate::{Error, Result};

/// Structural facts about the coupling graphs and the tests they unlock.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub m_connected: bool,
    pub b_connected: bool,
    pub k_connected: bool,
    pub union_connected: bool,
    pub m_k_edge_isolated: bool,
    /// Always starts with [`Method::General`].
    pub applicable: Vec<Method>,
}

pub fn structure(net: &NetworkSpec) -> Result<Structure> {
    let (m, b, k) = (net.inertial(), net.dissipative(), net.restorative());
    let union = m.union(b)?.union(k)?;
    let isolated = are_edge_isolated(m, k)?;
    let mut applicable = vec![Method::General];
    if b.is_connected() {
        applicable.push(Method::ConnectedBSufficient);
    }
    if m.is_edgeless() && k.is_edgeless() {
        applicable.push(Method::VelocityOnly);
    }
    if m.is_edgeless() {
        applicable.push(Method::PositionVelocity);
    }
    if k.is_edgeless() {
        applicable.push(Method::AccelVelocity);
    }
    if isolated {
        applicable.push(Method::EdgeIsolated);
    }
    Ok(Structure {
        m_connected: m.is_connected(),
        b_connected: b.is_connected(),
        k_connected: k.is_connected(),
        union_connected: union.is_connected(),
        m_k_edge_isolated: isolated,
        applicable,
    })
}

/// Everything [`analyze`] found out about a network.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub network: NetworkSpec,
    pub structure: Structure,
    /// The general verdict first, then every other test that was run.
    pub verdicts: Vec<SyncVerdict>,
    pub witness: Option<KernelWitness>,
    /// Some test disagreed with the general verdict, but one side was not
    /// robust. The general verdict stands.
    pub marginal: bool,
}

impl AnalysisReport {
    pub fn general(&self) -> &SyncVerdict {
        &self.verdicts[0]
    }

    pub fn synchronizes(&self) -> bool {
        self.general().synchronizes
    }

    /// Spectrum of the complex Laplacian.
    pub fn spectrum(&self) -> &Spectrum {
        &self.general().spectrum
    }

    pub fn verdict(&self, method: Method) -> Option<&SyncVerdict> {
        self.verdicts.iter().find(|v| v.method == method)
    }
}

/// Runs the general test, every applicable shortcut and the kernel oracle,
/// and fails with [`Error::Inconsistent`] if any two of them disagree.
pub fn analyze(net: &NetworkSpec) -> Result<AnalysisReport> {
    let structure = structure(net)?;
    let (m0, k0) = (net.m0(), net.k0());
    let (m, b, k) = (net.inertial(), net.dissipative(), net.restorative());

    let general = test_general(net)?;
    let mut verdicts = vec![general];
    verdicts.push(test_connected_b(net)?);
    for &method in &structure.applicable {
        let v = match method {
            Method::VelocityOnly => test_velocity_only(b, m0, k0)?,
            Method::PositionVelocity => test_position_velocity(b, k, m0, k0)?,
            Method::AccelVelocity => test_accel_velocity(m, b, m0, k0)?,
            Method::EdgeIsolated => test_edge_isolated(net)?,
            Method::General | Method::ConnectedBSufficient => continue,
        };
        verdicts.push(v);
    }
    let witness = kernel_oracle(net)?;

    let general = &verdicts[0];
    let sync = general.synchronizes;
    let mut marginal = false;
    for v in &verdicts[1..] {
        if v.conclusive && v.synchronizes != sync {
            if v.is_robust() && general.is_robust() {
                return Err(Error::Inconsistent(format!(
                    "{} says synchronizes={} but general says {}",
                    v.method, v.synchronizes, sync
                )));
            }
            marginal = true;
        }
    }
    // the oracle is structural, so only the spectral side can be fragile
    if net.q() >= 2 && witness.is_some() == sync {
        if general.is_robust() {
            return Err(Error::Inconsistent(format!(
                "kernel oracle {} a witness but general says synchronizes={}",
                if witness.is_some() {
                    "found"
                } else {
                    "found no"
                },
                sync
            )));
        }
        marginal = true;
    }

    Ok(AnalysisReport {
        network: net.clone(),
        structure,
        verdicts,
        witness,
        marginal,
    })
}
