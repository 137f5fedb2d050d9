//! Graph transformations: orientations, the vertex split `H ↦ G`,
//! subdivisions, pendant paths, and generators of high-girth or
//! high-chromatic test graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, dsatur_coloring, Graph};
use crate::qi::VertexMap;

/// A direction for every edge of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    owner: u64,
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// `tails[e]` must be an endpoint of edge `e`.
    pub fn from_tails(g: &Graph, tails: &[usize]) -> Result<Self> {
        if tails.len() != g.edge_count() {
            return Err(Error::LengthMismatch {
                expected: g.edge_count(),
                found: tails.len(),
            });
        }
        let arcs = g
            .edges()
            .iter()
            .zip(tails)
            .map(|(&(u, v), &t)| match t {
                t if t == u => Ok((u, v)),
                t if t == v => Ok((v, u)),
                _ => Err(Error::InvalidParameter(format!(
                    "tail {t} is not an endpoint of edge {u}-{v}"
                ))),
            })
            .collect::<Result<_>>()?;
        Ok(Orientation {
            owner: g.fingerprint(),
            arcs,
        })
    }

    /// Builds an orientation from arcs `(tail, head)`, one per edge in any order.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut tails = vec![usize::MAX; g.edge_count()];
        for &(t, h) in arcs {
            let e = g
                .edge_id(t, h)
                .ok_or_else(|| Error::InvalidParameter(format!("{t}->{h} is not an edge")))?;
            tails[e] = t;
        }
        if tails.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("some edge has no direction".into()));
        }
        Self::from_tails(g, &tails)
    }

    pub fn check_owner(&self, g: &Graph) -> Result<()> {
        if self.owner == g.fingerprint() && self.arcs.len() == g.edge_count() {
            Ok(())
        } else {
            Err(Error::OwnerMismatch { what: "orientation" })
        }
    }

    /// `(tail, head)` of edge `e`.
    pub fn arc(&self, e: usize) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tails(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.0).collect()
    }

    /// True iff edge `e` is directed away from `from`.
    pub fn leaves(&self, e: usize, from: usize) -> bool {
        self.arcs[e].0 == from
    }

    /// The orientation induced on a spanning subgraph; `edge_ids[i]` is the id
    /// in the parent graph of edge `i` of `sub`.
    pub fn restrict(&self, sub: &Graph, edge_ids: &[usize]) -> Orientation {
        Orientation {
            owner: sub.fingerprint(),
            arcs: edge_ids.iter().map(|&e| self.arcs[e]).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum OrientMode {
    /// Each edge gets a direction from a seeded ChaCha8 stream.
    Random { seed: u64 },
    /// Smaller index to larger; always acyclic.
    LowToHigh,
}

pub fn orient(g: &Graph, mode: OrientMode) -> Orientation {
    let arcs = match mode {
        OrientMode::LowToHigh => g.edges().to_vec(),
        OrientMode::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            g.edges()
                .iter()
                .map(|&(u, v)| if rng.gen::<bool>() { (u, v) } else { (v, u) })
                .collect()
        }
    };
    Orientation {
        owner: g.fingerprint(),
        arcs,
    }
}

/// The split graph `G`, its projection `φ: V(G) → V(H)` and the two copies
/// of each vertex of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub split_graph: Graph,
    pub projection: VertexMap,
    /// In-copy `v⁻`; equals `plus_of[v]` for vertices left unsplit.
    pub minus_of: Vec<usize>,
    /// Out-copy `v⁺`.
    pub plus_of: Vec<usize>,
}

impl SplitResult {
    pub fn minus(&self, v: usize) -> usize {
        self.minus_of[v]
    }

    pub fn plus(&self, v: usize) -> usize {
        self.plus_of[v]
    }

    /// The `G`-edge between the copies of `u` and `v` for an `H`-edge `uv`.
    pub fn copy_edge(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        [(self.plus_of[u], self.minus_of[v]), (self.plus_of[v], self.minus_of[u])]
            .into_iter()
            .find(|&(a, b)| self.split_graph.has_edge(a, b))
    }

    /// Recovers the orientation of `h` this split was built from.
    pub fn orientation(&self, h: &Graph) -> Result<Orientation> {
        self.check_base(h)?;
        let tails = h
            .edges()
            .iter()
            .map(|&(u, v)| {
                if self.split_graph.has_edge(self.plus_of[u], self.minus_of[v]) {
                    Ok(u)
                } else if self.split_graph.has_edge(self.plus_of[v], self.minus_of[u]) {
                    Ok(v)
                } else {
                    Err(Error::OwnerMismatch { what: "split" })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Orientation::from_tails(h, &tails)
    }

    /// Checks that the projection targets `h` and that every arc of `o` is
    /// present between the right copies.
    pub fn check_built_from(&self, h: &Graph, o: &Orientation) -> Result<()> {
        self.check_base(h)?;
        o.check_owner(h)?;
        let consistent = o
            .arcs()
            .iter()
            .all(|&(t, hd)| self.split_graph.has_edge(self.plus_of[t], self.minus_of[hd]));
        if consistent {
            Ok(())
        } else {
            Err(Error::OwnerMismatch { what: "split" })
        }
    }

    fn check_base(&self, h: &Graph) -> Result<()> {
        let n = h.vertex_count();
        let sized = self.projection.codomain_size() == n
            && self.minus_of.len() == n
            && self.plus_of.len() == n
            && self.projection.domain_size() == self.split_graph.vertex_count();
        if sized
            && self.split_graph.edge_count()
                == h.edge_count() + (0..n).filter(|&v| self.minus_of[v] != self.plus_of[v]).count()
        {
            Ok(())
        } else {
            Err(Error::OwnerMismatch { what: "split" })
        }
    }
}

/// Replaces each vertex `v` by adjacent `v⁻ = 2v`, `v⁺ = 2v + 1` and each
/// arc `u → v` by the edge `u⁺ v⁻`.
pub fn vertex_split(h: &Graph, o: &Orientation) -> Result<SplitResult> {
    partial_vertex_split(h, o, &vec![true; h.vertex_count()])
}

/// Splits only the vertices with `split[v]`; an unsplit vertex serves as its
/// own in- and out-copy. Vertices are numbered in order, a split vertex
/// taking two consecutive indices (in-copy first), so the full split uses
/// `2v` and `2v + 1`.
pub fn partial_vertex_split(h: &Graph, o: &Orientation, split: &[bool]) -> Result<SplitResult> {
    o.check_owner(h)?;
    if split.len() != h.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: h.vertex_count(),
            found: split.len(),
        });
    }
    h.require_connected()?;
    let mut minus_of = Vec::with_capacity(h.vertex_count());
    let mut plus_of = Vec::with_capacity(h.vertex_count());
    let mut image = Vec::new();
    for (v, &s) in split.iter().enumerate() {
        minus_of.push(image.len());
        image.push(v);
        if s {
            image.push(v);
        }
        plus_of.push(image.len() - 1);
    }
    let inner = (0..h.vertex_count())
        .filter(|&v| split[v])
        .map(|v| (minus_of[v], plus_of[v]));
    let arcs = o.arcs().iter().map(|&(t, hd)| (plus_of[t], minus_of[hd]));
    let split_graph = Graph::new(image.len(), inner.chain(arcs).collect::<Vec<_>>())?;
    let projection = VertexMap::new(image, h.vertex_count())?;
    Ok(SplitResult {
        split_graph,
        projection,
        minus_of,
        plus_of,
    })
}

/// Result of replacing every edge by a path.
#[derive(Clone, Debug, PartialEq)]
pub struct Subdivision {
    pub graph: Graph,
    /// Each vertex to its nearest original endpoint (ties to the smaller index).
    pub map: VertexMap,
    /// Original vertices keep indices `0..branch_count`.
    pub branch_count: usize,
}

/// Replaces each edge by a path with `t` edges through `t − 1` fresh vertices.
pub fn subdivide(h: &Graph, t: usize) -> Result<Subdivision> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "subdivision length t must be at least 1".into(),
        ));
    }
    let n = h.vertex_count();
    let mut image: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(h.edge_count() * t);
    for &(u, v) in h.edges() {
        let mut prev = u;
        for j in 1..t {
            let fresh = image.len();
            image.push(if j <= t - j { u } else { v });
            edges.push((prev, fresh));
            prev = fresh;
        }
        edges.push((prev, v));
    }
    let graph = Graph::new(image.len(), edges)?;
    Ok(Subdivision {
        graph,
        map: VertexMap::new(image, n)?,
        branch_count: n,
    })
}

/// Result of hanging a path off every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PendantAttachment {
    pub graph: Graph,
    /// Every vertex to the original vertex its pendant hangs from.
    pub anchor: VertexMap,
    /// `tips[v]`: far end of the pendant at `v`.
    pub tips: Vec<usize>,
}

/// Vertex `i` gains a pendant path of hop-length `base + i·stride`.
pub fn attach_pendant_paths(h: &Graph, base: usize, stride: usize) -> Result<PendantAttachment> {
    if base == 0 {
        return Err(Error::InvalidParameter("pendant base length must be at least 1".into()));
    }
    let n = h.vertex_count();
    let mut image: Vec<usize> = (0..n).collect();
    let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
    let mut tips = Vec::with_capacity(n);
    for v in 0..n {
        let mut prev = v;
        for _ in 0..base + v * stride {
            let fresh = image.len();
            image.push(v);
            edges.push((prev, fresh));
            prev = fresh;
        }
        tips.push(prev);
    }
    let graph = Graph::new(image.len(), edges)?;
    Ok(PendantAttachment {
        graph,
        anchor: VertexMap::new(image, n)?,
        tips,
    })
}

/// Output of [`random_high_girth`].
#[derive(Clone, Debug, PartialEq)]
pub struct HighGirthSample {
    pub graph: Graph,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub chi_greedy: usize,
    pub deleted: usize,
}

/// Erdős–Rényi `G(n, p)` followed by the deletion method: while a cycle
/// shorter than `min_girth` exists, delete the highest-degree vertex of a
/// shortest one (ties to the smaller index). Returns the largest component.
pub fn random_high_girth(n: usize, p: f64, min_girth: usize, seed: u64) -> Result<HighGirthSample> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} must lie strictly between 0 and 1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    let mut cur = Graph::new(n, edges)?;
    let mut deleted = 0;
    while let Some(cycle) = graph::cycle_shorter_than(&cur, min_girth) {
        let victim = *cycle
            .iter()
            .max_by_key(|&&v| (cur.degree(v), std::cmp::Reverse(v)))
            .expect("cycles are nonempty");
        let keep: Vec<bool> = (0..cur.vertex_count()).map(|v| v != victim).collect();
        cur = cur.induced_subgraph(&keep).0;
        deleted += 1;
    }
    let (graph, _) = cur.largest_component();
    let girth = graph::girth(&graph);
    let chi_greedy = greedy_chi(&graph);
    Ok(HighGirthSample {
        graph,
        girth,
        chi_greedy,
        deleted,
    })
}

/// Colours used by the DSATUR heuristic.
pub fn greedy_chi(g: &Graph) -> usize {
    dsatur_coloring(g).iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Mycielskian: copies `u_i` adjacent to the neighbours of `v_i`, plus an
/// apex adjacent to every copy. Raises χ by one and keeps triangle-freeness.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for &(a, b) in g.edges() {
        edges.push((n + a, b));
        edges.push((n + b, a));
    }
    edges.extend((0..n).map(|i| (n + i, 2 * n)));
    Graph::new(2 * n + 1, edges).expect("mycielskian is simple")
}

/// Named families used as fixtures and by the command line.
pub mod families {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("complete graph")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)))).expect("complete bipartite")
    }

    /// Star with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("petersen")
    }

    /// Cubic Hamiltonian graph from LCF notation `[pattern]^(n / len)`.
    pub fn lcf(n: usize, pattern: &[isize]) -> Result<Graph> {
        if n < 3 || pattern.is_empty() || !n.is_multiple_of(pattern.len()) {
            return Err(Error::InvalidParameter("LCF pattern length must divide n".into()));
        }
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut seen: std::collections::HashSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for i in 0..n {
            let j = (i as isize + pattern[i % pattern.len()]).rem_euclid(n as isize) as usize;
            if seen.insert((i.min(j), i.max(j))) {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges)
    }

    pub fn heawood() -> Graph {
        lcf(14, &[5, -5]).expect("heawood")
    }

    pub fn mcgee() -> Graph {
        lcf(24, &[12, 7, -7]).expect("mcgee")
    }

    pub fn tutte_coxeter() -> Graph {
        lcf(30, &[-13, -9, 7, -7, 9, 13]).expect("tutte-coxeter")
    }

    /// The cubic cage of the given girth, for girth 3 to 8.
    pub fn cubic_cage(girth: usize) -> Result<Graph> {
        Ok(match girth {
            3 => complete(4),
            4 => complete_bipartite(3, 3),
            5 => petersen(),
            6 => heawood(),
            7 => mcgee(),
            8 => tutte_coxeter(),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no cubic cage of girth {girth} available (3..=8)"
                )))
            }
        })
    }

    pub fn grotzsch() -> Graph {
        mycielski(&cycle(5).expect("C5"))
    }
}
