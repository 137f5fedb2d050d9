use serde::Serialize;

use super::{EdgeWeighting, Graph, MICRO_SCALE};
use crate::error::{Error, Result};

/// Simple path `v₀ … vₙ` in a specific graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Path {
    vertices: Vec<usize>,
    #[serde(skip)]
    edges: Vec<usize>,
    #[serde(skip)]
    owner: u64,
}

impl Path {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &vertices {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPath(format!("vertex {v} repeated")));
            }
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                g.edge_id(w[0], w[1])
                    .ok_or_else(|| Error::NotAPath(format!("{}-{} is not an edge", w[0], w[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path {
            vertices,
            edges,
            owner: g.fingerprint(),
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    pub fn hop_length(&self) -> usize {
        self.edges.len()
    }

    pub fn check_owner(&self, g: &Graph) -> Result<()> {
        if self.owner == g.fingerprint() {
            Ok(())
        } else {
            Err(Error::OwnerMismatch { what: "path" })
        }
    }

    /// Sub-path between positions `from..=to`.
    pub fn sub_path(&self, from: usize, to: usize) -> Path {
        Path {
            vertices: self.vertices[from..=to].to_vec(),
            edges: self.edges[from..to].to_vec(),
            owner: self.owner,
        }
    }
}

pub fn hop_length(p: &Path) -> usize {
    p.hop_length()
}

/// Sum of edge weights along `p`, summed in integer units when `w` is exact.
pub fn path_length(w: &EdgeWeighting, p: &Path) -> Result<f64> {
    if w.owner() != p.owner {
        return Err(Error::OwnerMismatch { what: "path" });
    }
    Ok(match w.micros() {
        Some(m) => p.edges.iter().map(|&e| m[e]).sum::<i64>() as f64 / MICRO_SCALE as f64,
        None => p.edges.iter().map(|&e| w.weight(e)).sum(),
    })
}
