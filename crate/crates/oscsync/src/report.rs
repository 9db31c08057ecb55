//! JSON shapes of the analysis and structure reports.

use oscsync_core::analysis::{AnalysisReport, Method, Structure, SyncVerdict};
use oscsync_core::Complex64;
use serde::Serialize;

use crate::formats::{ser_f64, ser_opt_f64, NetworkJson};

#[derive(Serialize)]
pub struct ComplexJson {
    #[serde(serialize_with = "ser_f64")]
    pub re: f64,
    #[serde(serialize_with = "ser_f64")]
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct StructureJson {
    pub m_connected: bool,
    pub b_connected: bool,
    pub k_connected: bool,
    pub union_connected: bool,
    pub m_k_edge_isolated: bool,
    /// A disconnected union splits the network into independent parts.
    pub trivially_nonsync: bool,
    pub applicable: Vec<&'static str>,
    pub recommendation: &'static str,
}

/// Cheapest test that settles the question for this structure.
pub fn recommend(s: &Structure) -> Method {
    const PREFERENCE: [Method; 5] = [
        Method::ConnectedBSufficient,
        Method::VelocityOnly,
        Method::PositionVelocity,
        Method::AccelVelocity,
        Method::EdgeIsolated,
    ];
    PREFERENCE
        .into_iter()
        .find(|m| s.applicable.contains(m))
        .unwrap_or(Method::General)
}

impl StructureJson {
    pub fn new(s: &Structure, q: usize) -> Self {
        Self {
            m_connected: s.m_connected,
            b_connected: s.b_connected,
            k_connected: s.k_connected,
            union_connected: s.union_connected,
            m_k_edge_isolated: s.m_k_edge_isolated,
            trivially_nonsync: q >= 2 && !s.union_connected,
            applicable: s.applicable.iter().map(|m| m.as_str()).collect(),
            recommendation: recommend(s).as_str(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub method: &'static str,
    pub synchronizes: bool,
    pub conclusive: bool,
    pub parameter_dependent: bool,
    pub lambda2: Option<ComplexJson>,
    #[serde(serialize_with = "ser_opt_f64")]
    pub margin: Option<f64>,
}

impl From<&SyncVerdict> for VerdictJson {
    fn from(v: &SyncVerdict) -> Self {
        Self {
            method: v.method.as_str(),
            synchronizes: v.synchronizes,
            conclusive: v.conclusive,
            parameter_dependent: v.parameter_dependent,
            lambda2: v.lambda2.map(ComplexJson::from),
            margin: v.margin,
        }
    }
}

#[derive(Serialize)]
pub struct ResidualsJson {
    #[serde(serialize_with = "ser_f64")]
    pub pencil: f64,
    #[serde(serialize_with = "ser_f64")]
    pub b: f64,
}

#[derive(Serialize)]
pub struct WitnessJson {
    #[serde(serialize_with = "ser_f64")]
    pub omega: f64,
    #[serde(serialize_with = "ser_f64")]
    pub mu: f64,
    pub xi: Vec<ComplexJson>,
    pub residuals: ResidualsJson,
    #[serde(serialize_with = "ser_f64")]
    pub distance_from_consensus: f64,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub network: NetworkJson,
    pub synchronizes: bool,
    /// Some check disagreed within rounding distance of the band edge.
    pub marginal: bool,
    pub structure: StructureJson,
    /// The general test always comes first.
    pub verdicts: Vec<VerdictJson>,
    pub spectrum: Vec<ComplexJson>,
    pub witness: Option<WitnessJson>,
}

impl From<&AnalysisReport> for ReportJson {
    fn from(r: &AnalysisReport) -> Self {
        Self {
            network: NetworkJson::from(&r.network),
            synchronizes: r.synchronizes(),
            marginal: r.marginal,
            structure: StructureJson::new(&r.structure, r.network.q()),
            verdicts: r.verdicts.iter().map(VerdictJson::from).collect(),
            spectrum: r.spectrum().iter().map(|z| ComplexJson::from(*z)).collect(),
            witness: r.witness.as_ref().map(|w| WitnessJson {
                omega: w.omega,
                mu: w.mu,
                xi: w.xi.iter().map(|z| ComplexJson::from(*z)).collect(),
                residuals: ResidualsJson {
                    pencil: w.residual_pencil,
                    b: w.residual_b,
                },
                distance_from_consensus: w.distance_from_consensus,
            }),
        }
    }
}
