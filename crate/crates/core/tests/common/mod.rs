#![allow(dead_code)]

use std::collections::HashSet;

use qi_core::constructions::{orient, OrientMode, Orientation};
use qi_core::{EdgeWeighting, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree on `n` vertices plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = HashSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (labels[i], labels[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.insert((a, b));
            }
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Graph::new(n, edges).unwrap()
}

/// Plain `G(n, p)`, possibly disconnected.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_orientation(rng: &mut impl Rng, g: &Graph) -> Orientation {
    orient(g, OrientMode::Random { seed: rng.gen() })
}

pub fn random_weights(rng: &mut impl Rng, g: &Graph, choices: &[&str]) -> EdgeWeighting {
    let ws: Vec<&str> = (0..g.edge_count()).map(|_| *choices.choose(rng).unwrap()).collect();
    EdgeWeighting::from_decimal_strs(g, &ws).unwrap()
}

/// Orientation of a path `0 − 1 − … − k` whose even edges point forward and
/// odd edges backward.
pub fn alternating_path_orientation(g: &Graph) -> Orientation {
    let tails: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let lo = a.min(b);
            if lo % 2 == 0 {
                lo
            } else {
                lo + 1
            }
        })
        .collect();
    Orientation::from_tails(g, &tails).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically smallest sorted edge list over all relabellings.
fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<_> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// One representative per isomorphism class of connected graphs with
/// `1 ≤ n ≤ max_n` vertices and at most `max_edges` edges.
pub fn connected_graphs_up_to_iso(max_n: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut seen = HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            if mask.count_ones() as usize > max_edges || (mask.count_ones() as usize) + 1 < n {
                continue;
            }
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Graph::new(n, edges.clone()).unwrap();
            if !g.is_connected() {
                continue;
            }
            if seen.insert(canonical(&edges, &perms)) {
                out.push(g);
            }
        }
    }
    out
}

/// Every simple path with `1..=max_len` edges, each listed once per direction.
pub fn simple_paths(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, cur: &mut Vec<usize>, on: &mut [bool], max_len: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() > 1 {
            out.push(cur.clone());
        }
        if cur.len() > max_len {
            return;
        }
        let last = *cur.last().unwrap();
        for &(v, _) in g.neighbors(last) {
            if !on[v] {
                on[v] = true;
                cur.push(v);
                extend(g, cur, on, max_len, out);
                cur.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        on[s] = true;
        extend(g, &mut vec![s], &mut on, max_len, &mut out);
        on[s] = false;
    }
    out
}
