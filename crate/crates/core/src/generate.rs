//! Seeded random networks for property tests and sweeps.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::NetworkSpec;
use crate::graphs::CouplingGraph;

/// Structural family a sampled network belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Independent sparse M, B, K.
    General,
    /// M edgeless.
    NoInertial,
    /// M and K edgeless.
    DissipativeOnly,
    /// B contains a random spanning tree.
    ConnectedDissipative,
    /// M and K live on disjoint vertex sets.
    EdgeIsolated,
}

/// Deterministic sampler; weights in `[0.1, 5]`, `m0`, `k0` in `[0.1, 10]`.
#[derive(Clone, Debug)]
pub struct NetworkSampler {
    rng: ChaCha8Rng,
    min_q: usize,
    max_q: usize,
}

impl NetworkSampler {
    pub const WEIGHT_RANGE: (f64, f64) = (0.1, 5.0);
    pub const PARAM_RANGE: (f64, f64) = (0.1, 10.0);

    pub fn new(seed: u64, max_q: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            min_q: 2,
            max_q: max_q.max(2),
        }
    }

    pub fn with_min_q(mut self, min_q: usize) -> Self {
        self.min_q = min_q.clamp(1, self.max_q);
        self
    }

    pub fn parameters(&mut self) -> (f64, f64) {
        let (lo, hi) = Self::PARAM_RANGE;
        (
            self.rng.random_range(lo..=hi),
            self.rng.random_range(lo..=hi),
        )
    }

    pub fn sample(&mut self, family: Family) -> NetworkSpec {
        let q = self.rng.random_range(self.min_q..=self.max_q);
        let all: Vec<usize> = (1..=q).collect();
        let (m, b, k) = match family {
            Family::General => (
                self.sparse_graph(q, &all),
                self.sparse_graph(q, &all),
                self.sparse_graph(q, &all),
            ),
            Family::NoInertial => (
                edgeless(q),
                self.sparse_graph(q, &all),
                self.sparse_graph(q, &all),
            ),
            Family::DissipativeOnly => (edgeless(q), self.sparse_graph(q, &all), edgeless(q)),
            Family::ConnectedDissipative => (
                self.sparse_graph(q, &all),
                self.connected_graph(q),
                self.sparse_graph(q, &all),
            ),
            Family::EdgeIsolated => {
                let mut nodes = all.clone();
                nodes.shuffle(&mut self.rng);
                let split = self.rng.random_range(0..=q);
                let m_nodes = nodes[..split].to_vec();
                let k_nodes = nodes[split..].to_vec();
                (
                    self.sparse_graph(q, &m_nodes),
                    self.sparse_graph(q, &all),
                    self.sparse_graph(q, &k_nodes),
                )
            }
        };
        let (m0, k0) = self.parameters();
        NetworkSpec::new(m, b, k, m0, k0).expect("sampled network is valid")
    }

    fn weight(&mut self) -> f64 {
        let (lo, hi) = Self::WEIGHT_RANGE;
        self.rng.random_range(lo..=hi)
    }

    /// Each pair inside `nodes` becomes an edge with a per-graph probability
    /// drawn from `[0.1, 0.6]`.
    fn sparse_graph(&mut self, q: usize, nodes: &[usize]) -> CouplingGraph {
        let p = self.rng.random_range(0.1..0.6);
        let mut edges = Vec::new();
        for (a, &i) in nodes.iter().enumerate() {
            for &j in &nodes[a + 1..] {
                if self.rng.random_bool(p) {
                    edges.push((i, j, self.weight()));
                }
            }
        }
        CouplingGraph::new(q, edges).expect("sampled graph is valid")
    }

    fn connected_graph(&mut self, q: usize) -> CouplingGraph {
        let mut order: Vec<usize> = (1..=q).collect();
        order.shuffle(&mut self.rng);
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for t in 1..q {
            let parent = order[self.rng.random_range(0..t)];
            edges.push((order[t], parent, self.weight()));
        }
        let extra = self.rng.random_range(0.0..0.4);
        for i in 1..=q {
            for j in (i + 1)..=q {
                let present = edges
                    .iter()
                    .any(|&(a, b, _)| (a == i && b == j) || (a == j && b == i));
                if !present && self.rng.random_bool(extra) {
                    edges.push((i, j, self.weight()));
                }
            }
        }
        CouplingGraph::new(q, edges).expect("sampled graph is valid")
    }
}

fn edgeless(q: usize) -> CouplingGraph {
    CouplingGraph::edgeless(q).expect("q >= 1")
}
