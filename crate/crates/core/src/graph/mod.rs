//! Finite simple graphs and their metric primitives.

mod coloring;
mod metric;
mod path;
mod weights;

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coloring::{
    chromatic_number_exact, chromatic_upper_greedy, dsatur_coloring, greedy_coloring, is_proper_coloring, Coloring,
    DEFAULT_CHI_VERTEX_LIMIT,
};
pub(crate) use metric::cycle_shorter_than;
pub use metric::{
    diameter, girth, hop_distances, is_geodesic, shortest_cycle, shortest_path, weighted_distances, DistanceMatrix,
    UNREACHABLE,
};
pub use path::{hop_length, path_length, Path};
pub use weights::{EdgeWeighting, WeightDomain, MICRO_SCALE};

/// Simple undirected graph on vertices `0..vertex_count`.
///
/// Edge ids are positions in the edge list given at construction; endpoints
/// are stored as `(min, max)`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` holds `(neighbour, edge id)` sorted by neighbour.
    adj: Vec<Vec<(usize, usize)>>,
    fingerprint: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.vertex_count, r.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertex_count: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            let id = list.len();
            list.push((a, b));
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateEdge(v.min(w[0].0), v.max(w[0].0)));
            }
        }
        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        list.hash(&mut hasher);
        Ok(Graph {
            n,
            edges: list,
            adj,
            fingerprint: hasher.finish(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbour, edge id)` pairs in ascending neighbour order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let nbrs = self.adj.get(u)?;
        nbrs.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| nbrs[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Structural hash of `(vertex_count, edge list)`, used to tie weightings,
    /// orientations and paths to the graph they were built for.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.n,
            })
        }
    }

    /// Component label per vertex, components numbered in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabelled in
    /// ascending order. Also returns the original index of each new vertex.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n).filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_of[u], new_of[v]));
        (Graph::new(old.len(), edges).expect("induced subgraph is simple"), old)
    }

    /// Spanning subgraph on the edges with `keep[e]`. Also returns the
    /// original id of each retained edge.
    pub fn spanning_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = (0..self.edges.len()).filter(|&e| keep[e]).collect();
        let g = Graph::new(self.n, ids.iter().map(|&e| self.edges[e])).expect("spanning subgraph is simple");
        (g, ids)
    }

    /// Largest connected component (ties to the one holding the smallest
    /// vertex), relabelled, with original indices.
    pub fn largest_component(&self) -> (Graph, Vec<usize>) {
        let label = self.components();
        let count = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; count];
        for &c in &label {
            sizes[c] += 1;
        }
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)));
        match best {
            None => (Graph::empty(0), Vec::new()),
            Some(c) => {
                let keep: Vec<bool> = label.iter().map(|&l| l == c).collect();
                self.induced_subgraph(&keep)
            }
        }
    }
}
