//! Oriented path patterns: exhaustive search, and the constructive
//! longest-directed-path bound (a directed path with at least `χ − 1` edges).

use serde::{Deserialize, Serialize};

use crate::constructions::Orientation;
use crate::error::{Error, Result};
use crate::graph::{is_proper_coloring, Graph};

/// Default cap on node expansions for [`find_pattern`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dir {
    /// The `i`-th edge is directed from `v_{i−1}` to `v_i`.
    Forward,
    Backward,
}

/// Directions of the edges of an oriented path, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathPattern {
    directions: Vec<Dir>,
}

impl PathPattern {
    pub fn new(directions: Vec<Dir>) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::InvalidParameter("a path pattern needs at least one edge".into()));
        }
        Ok(PathPattern { directions })
    }

    /// All edges forward.
    pub fn directed(n: usize) -> Result<Self> {
        Self::new(vec![Dir::Forward; n])
    }

    /// Edge `i` (counted from 1) is forward for odd `i`, backward for even `i`.
    pub fn alternating(n: usize) -> Result<Self> {
        Self::new(
            (1..=n)
                .map(|i| if i % 2 == 1 { Dir::Forward } else { Dir::Backward })
                .collect(),
        )
    }

    pub fn directions(&self) -> &[Dir] {
        &self.directions
    }

    pub fn hop_length(&self) -> usize {
        self.directions.len()
    }
}

/// Vertices `v_0, …, v_n` of an oriented path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedPathWitness {
    pub vertices: Vec<usize>,
}

impl OrientedPathWitness {
    pub fn hop_length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// True iff the vertices are distinct and each consecutive pair is an edge
    /// oriented as `pattern` prescribes.
    pub fn realizes(&self, g: &Graph, o: &Orientation, pattern: &PathPattern) -> bool {
        self.vertices.len() == pattern.hop_length() + 1
            && realizes_dirs(g, o, &self.vertices, pattern.directions().iter().copied())
    }

    /// True iff the vertices form a directed path (of any length, possibly 0).
    pub fn is_directed_path(&self, g: &Graph, o: &Orientation) -> bool {
        !self.vertices.is_empty() && realizes_dirs(g, o, &self.vertices, std::iter::repeat(Dir::Forward))
    }
}

fn realizes_dirs(g: &Graph, o: &Orientation, vs: &[usize], dirs: impl Iterator<Item = Dir>) -> bool {
    if o.check_owner(g).is_err() || vs.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    if vs.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    vs.windows(2).zip(dirs).all(|(w, d)| match g.edge_id(w[0], w[1]) {
        None => false,
        Some(e) => o.leaves(e, w[0]) == (d == Dir::Forward),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum PatternSearch {
    Found {
        witness: OrientedPathWitness,
    },
    /// The search space was exhausted: no occurrence exists.
    Exhausted,
    BudgetExceeded,
}

impl PatternSearch {
    pub fn witness(&self) -> Option<&OrientedPathWitness> {
        match self {
            PatternSearch::Found { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Search result together with the number of node expansions used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRun {
    pub outcome: PatternSearch,
    pub expansions: u64,
}

/// Out- and in-neighbours per vertex, ascending.
struct DirectedAdjacency {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl DirectedAdjacency {
    fn new(g: &Graph, o: &Orientation) -> Self {
        let n = g.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for v in 0..n {
            for &(u, e) in g.neighbors(v) {
                if o.leaves(e, v) {
                    out[v].push(u);
                } else {
                    inn[v].push(u);
                }
            }
        }
        DirectedAdjacency { out, inn }
    }

    fn step(&self, v: usize, d: Dir) -> &[usize] {
        match d {
            Dir::Forward => &self.out[v],
            Dir::Backward => &self.inn[v],
        }
    }
}

struct Backtrack<'a, F> {
    adj: DirectedAdjacency,
    dirs: &'a [Dir],
    on_path: Vec<bool>,
    path: Vec<usize>,
    expansions: u64,
    budget: u64,
    accept: F,
}

enum Step {
    Found,
    Continue,
    OutOfBudget,
}

impl<F: FnMut(&[usize]) -> bool> Backtrack<'_, F> {
    fn push(&mut self, v: usize) -> Step {
        if self.expansions >= self.budget {
            return Step::OutOfBudget;
        }
        self.expansions += 1;
        self.path.push(v);
        self.on_path[v] = true;
        let depth = self.path.len() - 1;
        let step = if depth == self.dirs.len() {
            if (self.accept)(&self.path) {
                Step::Found
            } else {
                Step::Continue
            }
        } else {
            self.extend(v, self.dirs[depth])
        };
        if !matches!(step, Step::Found) {
            self.on_path[v] = false;
            self.path.pop();
        }
        step
    }

    fn extend(&mut self, v: usize, d: Dir) -> Step {
        let mut i = 0;
        while let Some(&u) = self.adj.step(v, d).get(i) {
            i += 1;
            if self.on_path[u] {
                continue;
            }
            match self.push(u) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }
}

/// Exhaustive backtracking for an occurrence of `pattern` (start vertices
/// and neighbours in ascending order).
pub fn find_pattern(g: &Graph, o: &Orientation, pattern: &PathPattern, budget: u64) -> Result<PatternSearch> {
    Ok(find_pattern_with(g, o, pattern, budget, |_| true)?.outcome)
}

/// Like [`find_pattern`], but only occurrences for which `accept` returns
/// true count. `Exhausted` then means no accepted occurrence exists.
pub fn find_pattern_with<F>(
    g: &Graph,
    o: &Orientation,
    pattern: &PathPattern,
    budget: u64,
    accept: F,
) -> Result<SearchRun>
where
    F: FnMut(&[usize]) -> bool,
{
    o.check_owner(g)?;
    let n = g.vertex_count();
    let mut bt = Backtrack {
        adj: DirectedAdjacency::new(g, o),
        dirs: pattern.directions(),
        on_path: vec![false; n],
        path: Vec::with_capacity(pattern.hop_length() + 1),
        expansions: 0,
        budget,
        accept,
    };
    for s in 0..n {
        match bt.push(s) {
            Step::Continue => {}
            Step::Found => {
                let witness = OrientedPathWitness { vertices: bt.path };
                debug_assert!(witness.realizes(g, o, pattern));
                return Ok(SearchRun {
                    outcome: PatternSearch::Found { witness },
                    expansions: bt.expansions,
                });
            }
            Step::OutOfBudget => {
                return Ok(SearchRun {
                    outcome: PatternSearch::BudgetExceeded,
                    expansions: bt.expansions,
                });
            }
        }
    }
    Ok(SearchRun {
        outcome: PatternSearch::Exhausted,
        expansions: bt.expansions,
    })
}

/// Maximal acyclic sub-orientation built by inserting arcs in lexicographic
/// edge order, skipping any arc that would close a directed cycle.
fn maximal_acyclic_arcs(g: &Graph, o: &Orientation) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| g.edge(e));
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut mark = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for (stamp, e) in order.into_iter().enumerate() {
        let (t, h) = o.arc(e);
        // Adding t → h closes a cycle iff t is reachable from h.
        stack.clear();
        stack.push(h);
        mark[h] = stamp;
        let mut closes = false;
        while let Some(x) = stack.pop() {
            if x == t {
                closes = true;
                break;
            }
            for &y in &out[x] {
                if mark[y] != stamp {
                    mark[y] = stamp;
                    stack.push(y);
                }
            }
        }
        if !closes {
            out[t].push(h);
        }
    }
    out
}

/// Directed path with at least `χ(g) − 1` edges.
///
/// Levels vertices by the longest path ending at them in a maximal acyclic
/// sub-orientation; every edge left out would close a cycle, so its
/// endpoints get different levels and the levelling is a proper colouring.
pub fn gallai_roy_directed(g: &Graph, o: &Orientation) -> Result<OrientedPathWitness> {
    o.check_owner(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(OrientedPathWitness { vertices: Vec::new() });
    }
    let out = maximal_acyclic_arcs(g, o);
    let mut indeg = vec![0usize; n];
    for heads in &out {
        for &h in heads {
            indeg[h] += 1;
        }
    }
    let mut level = vec![0usize; n];
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut processed = 0;
    while let Some(v) = ready.pop() {
        processed += 1;
        for &h in &out[v] {
            level[h] = level[h].max(level[v] + 1);
            indeg[h] -= 1;
            if indeg[h] == 0 {
                ready.push(h);
            }
        }
    }
    assert_eq!(processed, n, "sub-orientation must be acyclic");
    assert!(
        is_proper_coloring(g, &level),
        "longest-path levels must colour the graph"
    );

    let mut inn: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, heads) in out.iter().enumerate() {
        for &h in heads {
            inn[h].push(t);
        }
    }
    let top = *level.iter().max().expect("nonempty");
    let mut v = (0..n).find(|&v| level[v] == top).expect("maximum is attained");
    let mut vertices = vec![v];
    while level[v] > 0 {
        v = *inn[v]
            .iter()
            .filter(|&&u| level[u] + 1 == level[v])
            .min()
            .expect("a level-defining predecessor exists");
        vertices.push(v);
    }
    vertices.reverse();
    let witness = OrientedPathWitness { vertices };
    debug_assert!(witness.is_directed_path(g, o));
    Ok(witness)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Directed,
    Alternating,
}

impl PathKind {
    pub fn pattern(self, hop: usize) -> Result<PathPattern> {
        match self {
            PathKind::Directed => PathPattern::directed(hop),
            PathKind::Alternating => PathPattern::alternating(hop),
        }
    }
}

/// Finds a path of the given kind with exactly `hop` edges. Directed paths
/// are first cut from the longest-level path, then searched exhaustively.
pub fn find_for_witness(g: &Graph, o: &Orientation, hop: usize, kind: PathKind, budget: u64) -> Result<SearchRun> {
    find_for_witness_with(g, o, hop, kind, budget, |_| true)
}

/// [`find_for_witness`] restricted to occurrences accepted by `accept`.
pub fn find_for_witness_with<F>(
    g: &Graph,
    o: &Orientation,
    hop: usize,
    kind: PathKind,
    budget: u64,
    mut accept: F,
) -> Result<SearchRun>
where
    F: FnMut(&[usize]) -> bool,
{
    let pattern = kind.pattern(hop)?;
    if kind == PathKind::Directed {
        let long = gallai_roy_directed(g, o)?;
        for window in long.vertices.windows(hop + 1) {
            if accept(window) {
                let witness = OrientedPathWitness {
                    vertices: window.to_vec(),
                };
                return Ok(SearchRun {
                    outcome: PatternSearch::Found { witness },
                    expansions: 0,
                });
            }
        }
    }
    find_pattern_with(g, o, &pattern, budget, accept)
}
