use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::ops::Add;

use super::{path_length, EdgeWeighting, Graph, Path, MICRO_SCALE};
use crate::error::{Error, Result};
use crate::par::{map_indices, Execution};
use crate::TOLERANCE;

/// Hop distance of a vertex that cannot be reached.
pub const UNREACHABLE: usize = usize::MAX;

/// Minimum hop-length from `source` to every vertex; [`UNREACHABLE`] where
/// there is no path.
pub fn hop_distances(g: &Graph, source: usize) -> Result<Vec<usize>> {
    g.check_vertex(source)?;
    Ok(bfs(g, source))
}

fn bfs(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Single-source shortest path lengths under `w`; `f64::INFINITY` where
/// unreachable.
pub fn weighted_distances(g: &Graph, w: &EdgeWeighting, source: usize) -> Result<Vec<f64>> {
    w.check_owner(g)?;
    g.check_vertex(source)?;
    Ok(weighted_row(g, w, source))
}

fn weighted_row(g: &Graph, w: &EdgeWeighting, source: usize) -> Vec<f64> {
    match w.micros() {
        Some(m) => dijkstra(g, |e| m[e], source)
            .dist
            .into_iter()
            .map(|d| d.map_or(f64::INFINITY, |x| x as f64 / MICRO_SCALE as f64))
            .collect(),
        None => dijkstra(g, |e| Real(w.weight(e)), source)
            .dist
            .into_iter()
            .map(|d| d.map_or(f64::INFINITY, |x| x.0))
            .collect(),
    }
}

trait Cost: Copy + Ord + Add<Output = Self> {
    const ZERO: Self;
}

impl Cost for i64 {
    const ZERO: Self = 0;
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Real(f64);

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        Real(self.0 + rhs.0)
    }
}

impl Cost for Real {
    const ZERO: Self = Real(0.0);
}

struct Tree<T> {
    dist: Vec<Option<T>>,
    hops: Vec<usize>,
}

/// Dijkstra keyed by `(length, hops)`.
fn dijkstra<T: Cost>(g: &Graph, weight: impl Fn(usize) -> T, source: usize) -> Tree<T> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut hops = vec![UNREACHABLE; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(T::ZERO);
    hops[source] = 0;
    heap.push(Reverse((T::ZERO, 0usize, source)));
    while let Some(Reverse((d, h, u))) = heap.pop() {
        if std::mem::replace(&mut done[u], true) {
            continue;
        }
        for &(v, e) in g.neighbors(u) {
            let cand = (d + weight(e), h + 1);
            let better = match dist[v] {
                None => true,
                Some(dv) => cand < (dv, hops[v]),
            };
            if better {
                dist[v] = Some(cand.0);
                hops[v] = cand.1;
                heap.push(Reverse((cand.0, cand.1, v)));
            }
        }
    }
    Tree { dist, hops }
}

/// Predecessors realising, for every vertex, the shortest path that has the
/// fewest hops and then the lexicographically smallest vertex sequence.
fn lex_predecessors<T: Cost>(g: &Graph, weight: impl Fn(usize) -> T, tree: &Tree<T>, source: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if tree.dist[v].is_some() {
            let h = tree.hops[v];
            if layers.len() <= h {
                layers.resize(h + 1, Vec::new());
            }
            layers[h].push(v);
        }
    }
    let mut pred = vec![UNREACHABLE; n];
    let mut rank = vec![0usize; n];
    rank[source] = 0;
    for layer in layers.iter().skip(1) {
        let mut keyed: Vec<(usize, usize)> = layer
            .iter()
            .map(|&v| {
                let dv = tree.dist[v].expect("reached");
                let best = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&(u, e)| {
                        tree.hops[u] != UNREACHABLE
                            && tree.hops[u] + 1 == tree.hops[v]
                            && tree.dist[u].map(|du| du + weight(e)) == Some(dv)
                    })
                    .min_by_key(|&&(u, _)| rank[u])
                    .map(|&(u, _)| u)
                    .expect("a tight predecessor exists");
                pred[v] = best;
                (rank[best], v)
            })
            .collect();
        keyed.sort_unstable();
        for (i, &(_, v)) in keyed.iter().enumerate() {
            rank[v] = i;
        }
    }
    pred
}

fn walk_back(pred: &[usize], source: usize, target: usize) -> Vec<usize> {
    let mut seq = vec![target];
    let mut cur = target;
    while cur != source {
        cur = pred[cur];
        seq.push(cur);
    }
    seq.reverse();
    seq
}

/// Deterministic shortest `(source, target)`-path: minimum length, then
/// fewest hops, then lexicographically smallest vertex sequence. Unit
/// weights when `w` is `None`.
pub fn shortest_path(g: &Graph, w: Option<&EdgeWeighting>, source: usize, target: usize) -> Result<Path> {
    g.check_vertex(source)?;
    g.check_vertex(target)?;
    if let Some(w) = w {
        w.check_owner(g)?;
    }
    let seq = match w.and_then(EdgeWeighting::micros) {
        Some(m) => lex_path(g, |e| m[e], source, target),
        None => match w {
            Some(w) => lex_path(g, |e| Real(w.weight(e)), source, target),
            None => lex_path(g, |_| 1i64, source, target),
        },
    }
    .ok_or(Error::Disconnected)?;
    Path::new(g, seq)
}

fn lex_path<T: Cost>(
    g: &Graph,
    weight: impl Fn(usize) -> T + Copy,
    source: usize,
    target: usize,
) -> Option<Vec<usize>> {
    let tree = dijkstra(g, weight, source);
    tree.dist[target]?;
    let pred = lex_predecessors(g, weight, &tree, source);
    Some(walk_back(&pred, source, target))
}

/// True iff `p` is a shortest path between its endpoints (unit weights when
/// `w` is `None`).
pub fn is_geodesic(g: &Graph, w: Option<&EdgeWeighting>, p: &Path) -> Result<bool> {
    p.check_owner(g)?;
    match w {
        None => Ok(bfs(g, p.first())[p.last()] == p.hop_length()),
        Some(w) => {
            let len = path_length(w, p)?;
            let d = weighted_distances(g, w, p.first())?[p.last()];
            Ok(len <= d + TOLERANCE)
        }
    }
}

/// Shortest cycle through `root` found by one BFS, as `(length, cycle)`.
fn shortest_cycle_at(g: &Graph, root: usize, bound: usize) -> Option<(usize, Vec<usize>)> {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![UNREACHABLE; n];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    let mut best: Option<(usize, usize, usize)> = None;
    while let Some(u) = queue.pop_front() {
        let limit = best.map_or(bound, |b| b.0);
        if 2 * dist[u] >= limit {
            break;
        }
        for &(v, _) in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if v != parent[u] {
                let len = dist[u] + dist[v] + 1;
                if best.map_or(len < bound, |b| len < b.0) {
                    best = Some((len, u, v));
                }
            }
        }
    }
    let (len, u, v) = best?;
    let mut cycle = walk_back(&parent, root, u);
    let mut other = walk_back(&parent, root, v);
    other.remove(0);
    other.reverse();
    cycle.extend(other);
    Some((len, cycle))
}

/// A shortest cycle as a vertex sequence (closing edge implied), or `None`
/// for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    cycle_shorter_than(g, usize::MAX)
}

/// A shortest cycle if the girth is below `bound`. Roots are scanned in
/// ascending order, each pruned by the best cycle found so far.
pub(crate) fn cycle_shorter_than(g: &Graph, bound: usize) -> Option<Vec<usize>> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for r in 0..g.vertex_count() {
        let limit = best.as_ref().map_or(bound, |b| b.0);
        if let Some(found) = shortest_cycle_at(g, r, limit) {
            best = Some(found);
        }
    }
    best.map(|(_, c)| c)
}

/// Length of a shortest cycle; `None` stands for infinity (forests).
pub fn girth(g: &Graph) -> Option<usize> {
    shortest_cycle(g).map(|c| c.len())
}

/// Largest hop distance; errors on disconnected graphs.
pub fn diameter(g: &Graph) -> Result<usize> {
    let m = DistanceMatrix::hops(g)?;
    Ok(m.max() as usize)
}

/// All-pairs distances of a connected graph, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn hops(g: &Graph) -> Result<Self> {
        Self::compute(g, None, Execution::default())
    }

    pub fn weighted(g: &Graph, w: &EdgeWeighting) -> Result<Self> {
        Self::compute(g, Some(w), Execution::default())
    }

    pub fn of(g: &Graph, w: Option<&EdgeWeighting>) -> Result<Self> {
        Self::compute(g, w, Execution::default())
    }

    /// One BFS / Dijkstra per source, spread according to `exec`.
    pub fn compute(g: &Graph, w: Option<&EdgeWeighting>, exec: Execution) -> Result<Self> {
        if let Some(w) = w {
            w.check_owner(g)?;
        }
        g.require_connected()?;
        let n = g.vertex_count();
        let rows: Vec<Vec<f64>> = map_indices(n, exec, |s| match w {
            Some(w) => weighted_row(g, w, s),
            None => bfs(g, s).into_iter().map(|d| d as f64).collect(),
        });
        Ok(DistanceMatrix { n, data: rows.concat() })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn hop_distances_small() {
        let tri = cycle(3);
        assert_eq!(hop_distances(&tri, 0).unwrap(), vec![0, 1, 1]);
        let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(hop_distances(&path, 0).unwrap(), vec![0, 1, 2, 3]);
        assert!(hop_distances(&path, 4).is_err());
        let two = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(hop_distances(&two, 0).unwrap()[2], UNREACHABLE);
    }

    #[test]
    fn weighted_distances_small() {
        let e = Graph::new(2, [(0, 1)]).unwrap();
        let w = EdgeWeighting::from_decimal_strs(&e, &["2.5"]).unwrap();
        assert_eq!(weighted_distances(&e, &w, 0).unwrap(), vec![0.0, 2.5]);

        let c4 = cycle(4);
        let w = EdgeWeighting::from_decimal_strs(&c4, &["1", "1", "1", "10"]).unwrap();
        // edge ids: 0-1, 1-2, 2-3, 3-0 (weight 10)
        assert_eq!(weighted_distances(&c4, &w, 0).unwrap()[2], 2.0);
        assert_eq!(weighted_distances(&c4, &w, 0).unwrap()[3], 3.0);
    }

    #[test]
    fn weighting_mismatch_is_an_error() {
        let w = EdgeWeighting::unit(&cycle(4));
        assert!(weighted_distances(&cycle(5), &w, 0).is_err());
    }

    #[test]
    fn tie_breaking_prefers_fewer_hops_then_lexicographic() {
        // 0-1-3 and 0-2-3 both length 2; 0-3 direct length 2 with one hop.
        let g = Graph::new(4, [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]).unwrap();
        let w = EdgeWeighting::from_decimal_strs(&g, &["1", "1", "1", "1", "2"]).unwrap();
        assert_eq!(shortest_path(&g, Some(&w), 0, 3).unwrap().vertices(), &[0, 3]);
        let w = EdgeWeighting::from_decimal_strs(&g, &["1", "1", "1", "1", "3"]).unwrap();
        assert_eq!(shortest_path(&g, Some(&w), 0, 3).unwrap().vertices(), &[0, 1, 3]);
        assert_eq!(shortest_path(&g, Some(&w), 3, 0).unwrap().vertices(), &[3, 1, 0]);
    }

    #[test]
    fn lexicographic_choice_looks_at_whole_prefix() {
        // Two 3-hop paths 0-1-4-5 and 0-2-3-5.
        let g = Graph::new(6, [(0, 2), (2, 3), (3, 5), (0, 1), (1, 4), (4, 5)]).unwrap();
        assert_eq!(shortest_path(&g, None, 0, 5).unwrap().vertices(), &[0, 1, 4, 5]);
        assert_eq!(shortest_path(&g, None, 5, 0).unwrap().vertices(), &[5, 3, 2, 0]);
    }

    #[test]
    fn geodesic_checks() {
        let tri = cycle(3);
        for &(u, v) in tri.edges() {
            assert!(is_geodesic(&tri, None, &Path::new(&tri, vec![u, v]).unwrap()).unwrap());
        }
        let c5 = cycle(5);
        let arc = Path::new(&c5, vec![0, 1, 2, 3]).unwrap();
        assert!(!is_geodesic(&c5, None, &arc).unwrap());
        let c4 = cycle(4);
        let w = EdgeWeighting::from_decimal_strs(&c4, &["1", "1", "1", "5"]).unwrap();
        let heavy = Path::new(&c4, vec![3, 0]).unwrap();
        assert!(!is_geodesic(&c4, Some(&w), &heavy).unwrap());
        assert!(is_geodesic(&c4, None, &heavy).unwrap());
    }

    #[test]
    fn girth_small_cases() {
        assert_eq!(girth(&cycle(3)), Some(3));
        assert_eq!(girth(&cycle(8)), Some(8));
        let tree = Graph::new(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(shortest_cycle(&tree), None);
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(girth(&k4), Some(3));
    }

    #[test]
    fn shortest_cycle_is_a_cycle() {
        // 4-cycle glued to a 6-cycle.
        let g = Graph::new(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)],
        )
        .unwrap();
        let c = shortest_cycle(&g).unwrap();
        assert_eq!(c.len(), 4);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }
    }

    #[test]
    fn distance_matrix_requires_connectivity() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(DistanceMatrix::hops(&g), Err(Error::Disconnected));
        let m = DistanceMatrix::hops(&cycle(6)).unwrap();
        assert_eq!(m.get(0, 3), 3.0);
        assert_eq!(m.max(), 3.0);
        assert_eq!(diameter(&cycle(7)).unwrap(), 3);
    }

    #[test]
    fn sequential_and_parallel_matrices_agree() {
        let g = cycle(30);
        let w = EdgeWeighting::from_f64(&g, (0..30).map(|i| 1.0 + (i % 7) as f64 / 3.0).collect()).unwrap();
        let a = DistanceMatrix::compute(&g, Some(&w), Execution::Sequential).unwrap();
        let b = DistanceMatrix::compute(&g, Some(&w), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
