use super::Graph;
use crate::error::{Error, Result};

/// Default size guard for [`chromatic_number_exact`].
pub const DEFAULT_CHI_VERTEX_LIMIT: usize = 30;

/// Colour per vertex, colours numbered from 0.
pub type Coloring = Vec<usize>;

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

fn smallest_free(g: &Graph, colors: &[usize], v: usize) -> usize {
    let mut used: Vec<bool> = vec![false; g.degree(v) + 1];
    for &(u, _) in g.neighbors(v) {
        if colors[u] < used.len() {
            used[colors[u]] = true;
        }
    }
    used.iter().position(|&b| !b).expect("degree + 1 slots")
}

/// First-fit colouring along `order`.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || !order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidParameter(
            "order is not a permutation of the vertices".into(),
        ));
    }
    let mut colors = vec![usize::MAX; n];
    for &v in order {
        colors[v] = smallest_free(g, &colors, v);
    }
    Ok(colors)
}

/// Number of colours used by first-fit along `order` (0 for the empty graph).
pub fn chromatic_upper_greedy(g: &Graph, order: &[usize]) -> Result<usize> {
    let colors = greedy_coloring(g, order)?;
    Ok(colors.iter().map(|&c| c + 1).max().unwrap_or(0))
}

/// DSATUR heuristic colouring (ties: larger degree, then smaller index).
pub fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![usize::MAX; n];
    let mut neighbour_colors: Vec<Vec<bool>> = (0..n).map(|v| vec![false; g.degree(v) + 1]).collect();
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = neighbour_colors[v].iter().position(|&b| !b).expect("degree + 1 slots");
        colors[v] = c;
        for &(u, _) in g.neighbors(v) {
            if c < neighbour_colors[u].len() && !neighbour_colors[u][c] {
                neighbour_colors[u][c] = true;
                saturation[u] += 1;
            }
        }
    }
    colors
}

/// Greedy clique (max-degree first) used as a lower bound.
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.vertex_count() {
        let mut clique = vec![start];
        let mut cands: Vec<usize> = g.neighbors(start).iter().map(|&(u, _)| u).collect();
        while !cands.is_empty() {
            let &pick = cands
                .iter()
                .max_by_key(|&&u| {
                    (
                        cands.iter().filter(|&&x| g.has_edge(u, x)).count(),
                        std::cmp::Reverse(u),
                    )
                })
                .expect("nonempty");
            clique.push(pick);
            cands.retain(|&x| x != pick && g.has_edge(pick, x));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Search<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    /// `counts[v][c]`: neighbours of `v` currently holding colour `c`.
    counts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    best_colors: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &(u, _) in self.g.neighbors(v) {
            if self.counts[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.counts[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = usize::MAX;
        for &(u, _) in self.g.neighbors(v) {
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn run(&mut self, colored: usize, used: usize, lower: usize) -> bool {
        let n = self.g.vertex_count();
        if colored == n {
            self.best = used;
            self.best_colors = self.colors.clone();
            return self.best <= lower;
        }
        let v = (0..n)
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        for c in 0..=used {
            if self.counts[v][c] != 0 {
                continue;
            }
            let next_used = used.max(c + 1);
            if next_used >= self.best {
                continue;
            }
            self.assign(v, c);
            let done = self.run(colored + 1, next_used, lower);
            self.unassign(v, c);
            if done {
                return true;
            }
        }
        false
    }
}

/// Exact chromatic number by DSATUR branch-and-bound, seeded with the DSATUR
/// upper bound and a greedy clique lower bound.
pub fn chromatic_number_exact(g: &Graph, vertex_limit: usize) -> Result<usize> {
    chromatic_exact_with_coloring(g, vertex_limit).map(|(k, _)| k)
}

pub(crate) fn chromatic_exact_with_coloring(g: &Graph, vertex_limit: usize) -> Result<(usize, Coloring)> {
    let n = g.vertex_count();
    if n > vertex_limit {
        return Err(Error::TooLarge(format!(
            "exact chromatic number limited to {vertex_limit} vertices, graph has {n}"
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let start = dsatur_coloring(g);
    let upper = start.iter().max().map_or(0, |&c| c + 1);
    let lower = greedy_clique(g).len();
    if upper == lower {
        return Ok((upper, start));
    }
    let mut s = Search {
        g,
        colors: vec![usize::MAX; n],
        counts: vec![vec![0; n + 1]; n],
        saturation: vec![0; n],
        best: upper,
        best_colors: start,
    };
    s.run(0, 0, lower);
    debug_assert!(is_proper_coloring(g, &s.best_colors));
    Ok((s.best, s.best_colors))
}
