//! JSON and CSV file formats.
//!
//! Every floating-point number is written with 17 significant digits so
//! that a value read back is bit-identical to the one written.

use std::fmt::Write as _;
use std::io::Write;

use oscsync_core::analysis::NetworkSpec;
use oscsync_core::circuit::{Coupler, CouplerKind, Netlist, Tank};
use oscsync_core::graphs::CouplingGraph;
use oscsync_core::simulate::Trajectory;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(serde_json::Error),
    #[error("{field}: {error}")]
    Field {
        field: String,
        error: oscsync_core::Error,
    },
    #[error("couplers[{index}].kind: expected \"C\", \"R\" or \"L\", found {found:?}")]
    CouplerKind { index: usize, found: String },
    #[error("couplers[{index}]: node {node} exceeds q = {q}")]
    CouplerNode { index: usize, node: usize, q: usize },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

/// `{:.16e}` rendering, which always carries 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        // keeps "-0" out of the output
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    RawValue::from_string(sig17(*x))
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

pub(crate) fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_f64")]
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkJson {
    pub q: usize,
    #[serde(serialize_with = "ser_f64")]
    pub m0: f64,
    #[serde(serialize_with = "ser_f64")]
    pub k0: f64,
    #[serde(default)]
    pub inertial: Vec<EdgeJson>,
    #[serde(default)]
    pub dissipative: Vec<EdgeJson>,
    #[serde(default)]
    pub restorative: Vec<EdgeJson>,
}

fn edges_json(g: &CouplingGraph) -> Vec<EdgeJson> {
    g.edges()
        .iter()
        .map(|e| EdgeJson {
            i: e.i,
            j: e.j,
            w: e.w,
        })
        .collect()
}

impl From<&NetworkSpec> for NetworkJson {
    fn from(net: &NetworkSpec) -> Self {
        Self {
            q: net.q(),
            m0: net.m0(),
            k0: net.k0(),
            inertial: edges_json(net.inertial()),
            dissipative: edges_json(net.dissipative()),
            restorative: edges_json(net.restorative()),
        }
    }
}

impl NetworkJson {
    pub fn to_network(&self) -> Result<NetworkSpec, FormatError> {
        let graph = |field: &str, edges: &[EdgeJson]| {
            CouplingGraph::new(self.q, edges.iter().map(|e| (e.i, e.j, e.w))).map_err(|error| {
                FormatError::Field {
                    field: field.to_string(),
                    error,
                }
            })
        };
        let m = graph("inertial", &self.inertial)?;
        let b = graph("dissipative", &self.dissipative)?;
        let k = graph("restorative", &self.restorative)?;
        NetworkSpec::new(m, b, k, self.m0, self.k0).map_err(|error| FormatError::Field {
            field: "network".to_string(),
            error,
        })
    }
}

pub fn parse_network(text: &str) -> Result<NetworkSpec, FormatError> {
    serde_json::from_str::<NetworkJson>(text)?.to_network()
}

pub fn network_to_json(net: &NetworkSpec) -> String {
    to_json(&NetworkJson::from(net))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TankJson {
    #[serde(serialize_with = "ser_f64")]
    pub c0: f64,
    #[serde(serialize_with = "ser_f64")]
    pub l0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplerJson {
    pub kind: String,
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistJson {
    pub q: usize,
    pub tank: TankJson,
    #[serde(default)]
    pub couplers: Vec<CouplerJson>,
}

/// Parses a netlist and returns it with its node count.
pub fn parse_netlist(text: &str) -> Result<(Netlist, usize), FormatError> {
    let raw: NetlistJson = serde_json::from_str(text)?;
    let mut couplers = Vec::with_capacity(raw.couplers.len());
    for (index, c) in raw.couplers.iter().enumerate() {
        let kind = CouplerKind::from_symbol(&c.kind).ok_or_else(|| FormatError::CouplerKind {
            index,
            found: c.kind.clone(),
        })?;
        for node in [c.i, c.j] {
            if node > raw.q {
                return Err(FormatError::CouplerNode {
                    index,
                    node,
                    q: raw.q,
                });
            }
        }
        couplers.push(Coupler {
            kind,
            i: c.i,
            j: c.j,
            value: c.value,
        });
    }
    let tank = Tank {
        c0: raw.tank.c0,
        l0: raw.tank.l0,
    };
    let nl = Netlist::new(tank, couplers).map_err(|error| FormatError::Field {
        field: "netlist".to_string(),
        error,
    })?;
    Ok((nl, raw.q))
}

pub fn netlist_to_json(nl: &Netlist, q: usize) -> String {
    let tank = nl.tank();
    to_json(&NetlistJson {
        q,
        tank: TankJson {
            c0: tank.c0,
            l0: tank.l0,
        },
        couplers: nl
            .couplers()
            .iter()
            .map(|c| CouplerJson {
                kind: c.kind.symbol().to_string(),
                i: c.i,
                j: c.j,
                value: c.value,
            })
            .collect(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

/// Writes `t,x1..xq,v1..vq,V,d` rows.
pub fn write_trajectory_csv(tr: &Trajectory, out: &mut impl Write) -> std::io::Result<()> {
    let q = tr.q();
    let mut header = String::from("t");
    for prefix in ["x", "v"] {
        for k in 1..=q {
            let _ = write!(header, ",{prefix}{k}");
        }
    }
    header.push_str(",V,d\n");
    out.write_all(header.as_bytes())?;
    let mut line = String::new();
    for k in 0..tr.len() {
        line.clear();
        line.push_str(&sig17(tr.times[k]));
        for x in tr.positions[k].iter().chain(&tr.velocities[k]) {
            line.push(',');
            line.push_str(&sig17(*x));
        }
        for x in [tr.energy[k], tr.disagreement[k]] {
            line.push(',');
            line.push_str(&sig17(x));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}
