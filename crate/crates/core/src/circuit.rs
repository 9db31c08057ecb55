//! LC-tank netlists: identical tanks `(c0, l0)` at every node, coupled
//! pairwise by capacitors, resistors and inductors.
//!
//! With node voltages as state, capacitors couple accelerations, resistors
//! velocities and inductors positions:
//!
//! | element   | network quantity      |
//! |-----------|-----------------------|
//! | tank `c0` | `m0 = c0`             |
//! | tank `l0` | `k0 = 1/l0`           |
//! | `C` `c_ij`| inertial `m_ij = c_ij`|
//! | `R` `r_ij`| dissipative `1/r_ij`  |
//! | `L` `l_ij`| restorative `1/l_ij`  |

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::analysis::NetworkSpec;
use crate::graphs::CouplingGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CouplerKind {
    Capacitor,
    Resistor,
    Inductor,
}

impl CouplerKind {
    pub fn symbol(self) -> char {
        match self {
            CouplerKind::Capacitor => 'C',
            CouplerKind::Resistor => 'R',
            CouplerKind::Inductor => 'L',
        }
    }

    pub fn from_symbol(c: &str) -> Option<Self> {
        match c {
            "C" => Some(CouplerKind::Capacitor),
            "R" => Some(CouplerKind::Resistor),
            "L" => Some(CouplerKind::Inductor),
            _ => None,
        }
    }
}

/// Two-terminal element between nodes `i` and `j` (1-based). Values in SI
/// units: farads, ohms or henries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupler {
    pub kind: CouplerKind,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tank {
    pub c0: f64,
    pub l0: f64,
}

/// Validated netlist: positive values, no self loops, at most one coupler
/// of each kind per node pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Netlist {
    tank: Tank,
    couplers: Vec<Coupler>,
}

impl Netlist {
    pub fn new(tank: Tank, couplers: Vec<Coupler>) -> Result<Self> {
        for (name, value) in [("c0", tank.c0), ("l0", tank.l0)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        let mut seen = BTreeSet::new();
        for (index, c) in couplers.iter().enumerate() {
            if !(c.value.is_finite() && c.value > 0.0) {
                return Err(Error::InvalidCoupler {
                    index,
                    reason: "value must be finite and positive",
                });
            }
            if c.i == c.j {
                return Err(Error::InvalidCoupler {
                    index,
                    reason: "terminals must be distinct nodes",
                });
            }
            if c.i == 0 || c.j == 0 {
                return Err(Error::InvalidCoupler {
                    index,
                    reason: "node indices are 1-based",
                });
            }
            let pair = (c.i.min(c.j), c.i.max(c.j));
            if !seen.insert((c.kind, pair)) {
                return Err(Error::DuplicateCoupler {
                    kind: c.kind.symbol(),
                    i: pair.0,
                    j: pair.1,
                });
            }
        }
        Ok(Self { tank, couplers })
    }

    pub fn tank(&self) -> Tank {
        self.tank
    }

    pub fn couplers(&self) -> &[Coupler] {
        &self.couplers
    }

    /// Largest node index referenced by a coupler.
    pub fn max_node(&self) -> usize {
        self.couplers
            .iter()
            .map(|c| c.i.max(c.j))
            .max()
            .unwrap_or(0)
    }
}

/// Maps a netlist on `q` nodes to the equivalent oscillator network.
pub fn netlist_to_network(nl: &Netlist, q: usize) -> Result<NetworkSpec> {
    let mut parts: [Vec<(usize, usize, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for c in &nl.couplers {
        for node in [c.i, c.j] {
            if node > q {
                return Err(Error::NodeOutOfRange { node, q });
            }
        }
        let (slot, w) = match c.kind {
            CouplerKind::Capacitor => (0, c.value),
            CouplerKind::Resistor => (1, 1.0 / c.value),
            CouplerKind::Inductor => (2, 1.0 / c.value),
        };
        parts[slot].push((c.i, c.j, w));
    }
    let [m, b, k] = parts;
    NetworkSpec::new(
        CouplingGraph::new(q, m)?,
        CouplingGraph::new(q, b)?,
        CouplingGraph::new(q, k)?,
        nl.tank.c0,
        1.0 / nl.tank.l0,
    )
}

/// Inverse of [`netlist_to_network`]: capacitors, then resistors, then
/// inductors, each in canonical edge order.
pub fn network_to_netlist(net: &NetworkSpec) -> Netlist {
    let mut couplers = Vec::new();
    let groups = [
        (CouplerKind::Capacitor, net.inertial()),
        (CouplerKind::Resistor, net.dissipative()),
        (CouplerKind::Inductor, net.restorative()),
    ];
    for (kind, g) in groups {
        for e in g.edges() {
            let value = match kind {
                CouplerKind::Capacitor => e.w,
                CouplerKind::Resistor | CouplerKind::Inductor => 1.0 / e.w,
            };
            couplers.push(Coupler {
                kind,
                i: e.i,
                j: e.j,
                value,
            });
        }
    }
    Netlist {
        tank: Tank {
            c0: net.m0(),
            l0: 1.0 / net.k0(),
        },
        couplers,
    }
}

/// `ω₀ = 1/√(c0·l0)` in rad/s.
pub fn uncoupled_frequency(nl: &Netlist) -> f64 {
    1.0 / libm::sqrt(nl.tank.c0 * nl.tank.l0)
}

/// Coefficients of one node equation
/// `Σ_j accel[j]·ẍ_j + velocity[j]·ẋ_j + position[j]·x_j = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeEquation {
    pub accel: Vec<f64>,
    pub velocity: Vec<f64>,
    pub position: Vec<f64>,
}

/// Kirchhoff current balance at every node: the rows of `M_a`, `B`, `K_a`.
pub fn node_equations(net: &NetworkSpec) -> Vec<NodeEquation> {
    let m_a = net.augmented_inertia();
    let b = net.dissipative().laplacian();
    let k_a = net.augmented_stiffness();
    (0..net.q())
        .map(|i| NodeEquation {
            accel: m_a.as_matrix().row(i).to_vec(),
            velocity: b.as_matrix().row(i).to_vec(),
            position: k_a.as_matrix().row(i).to_vec(),
        })
        .collect()
}
