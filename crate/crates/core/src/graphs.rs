//! Weighted undirected coupling graphs and their Laplacians.
//!
//! Node labels are 1-based throughout the public API, matching the file
//! formats; Laplacian row `r` belongs to node `r + 1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{RealMatrix, RealSymMatrix};
use crate::{Error, Result};

/// Laplacian of a [`CouplingGraph`]: symmetric, zero row sums, PSD.
pub type LaplacianMatrix = RealSymMatrix;

/// Undirected edge `i < j` with positive weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// Symmetric nonnegative weighted graph on nodes `1..=q`.
///
/// Edges are kept sorted by `(i, j)` with `i < j`; zero weights, self loops
/// and duplicate pairs are rejected at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingGraph {
    q: usize,
    edges: Vec<Edge>,
}

impl CouplingGraph {
    /// Builds a graph from `(i, j, w)` triples in either orientation.
    pub fn new(q: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, j, w) in edges {
            if i == j {
                return Err(Error::InvalidEdge {
                    i,
                    j,
                    reason: "self loop",
                });
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if a == 0 || b > q {
                return Err(Error::InvalidEdge {
                    i,
                    j,
                    reason: "node index out of range",
                });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidEdge {
                    i,
                    j,
                    reason: "weight must be finite and positive",
                });
            }
            if map.insert((a, b), w).is_some() {
                return Err(Error::DuplicateEdge { i: a, j: b });
            }
        }
        let edges = map
            .into_iter()
            .map(|((i, j), w)| Edge { i, j, w })
            .collect();
        Ok(Self { q, edges })
    }

    pub fn edgeless(q: usize) -> Result<Self> {
        Self::new(q, [])
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// `L[i][i] = Σ_j w_ij`, `L[i][j] = −w_ij`.
    pub fn laplacian(&self) -> LaplacianMatrix {
        let mut m = RealMatrix::zeros(self.q, self.q);
        for e in &self.edges {
            let (a, b) = (e.i - 1, e.j - 1);
            m[(a, a)] += e.w;
            m[(b, b)] += e.w;
            m[(a, b)] -= e.w;
            m[(b, a)] -= e.w;
        }
        RealSymMatrix::new(m).expect("graph Laplacian is symmetric by construction")
    }

    /// Breadth-first reachability from node 1.
    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.q];
        for e in &self.edges {
            adj[e.i - 1].push(e.j - 1);
            adj[e.j - 1].push(e.i - 1);
        }
        let mut seen = vec![false; self.q];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.q
    }

    /// Nodes touched by at least one edge.
    pub fn incident_vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|e| [e.i, e.j]).collect()
    }

    /// Edge present in either graph; weights of shared pairs add.
    pub fn union(&self, other: &Self) -> Result<Self> {
        check_same_size(self, other)?;
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for e in self.edges.iter().chain(&other.edges) {
            *map.entry((e.i, e.j)).or_insert(0.0) += e.w;
        }
        Self::new(self.q, map.into_iter().map(|((i, j), w)| (i, j, w)))
    }
}

/// True iff no node is incident to an edge of both graphs.
pub fn are_edge_isolated(g1: &CouplingGraph, g2: &CouplingGraph) -> Result<bool> {
    check_same_size(g1, g2)?;
    Ok(g1.incident_vertices().is_disjoint(&g2.incident_vertices()))
}

pub fn graph_union(g1: &CouplingGraph, g2: &CouplingGraph) -> Result<CouplingGraph> {
    g1.union(g2)
}

fn check_same_size(g1: &CouplingGraph, g2: &CouplingGraph) -> Result<()> {
    if g1.q != g2.q {
        return Err(Error::DimensionMismatch {
            expected: g1.q,
            found: g2.q,
        });
    }
    Ok(())
}
