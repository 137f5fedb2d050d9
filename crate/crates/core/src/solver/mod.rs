//! Searches for an edge weighting `w` of `H` that makes the split projection
//! `φ: G → (H, w)` a `(1, C)`-quasi-isometry.
//!
//! [`solve_bruteforce`] enumerates a finite grid and serves as the oracle.
//! [`solve_lp`] is a constraint-generation heuristic over the reals. Lower
//! bounds `Σ_{e∈P} w_e ≥ d_G(x, y) − C` for every `H`-path `P` between `φx` and
//! `φy` are separated lazily by shortest-path computations. The upper bounds
//! need *some* short path per pair, a disjunction that is handled by fixing
//! one candidate path per pair (with elastic slack), solving, and
//! re-selecting candidates as shortest paths under the new weights.
//!
//! Constraints only depend on `H`-pairs: for `φx = a, φy = b` it suffices that
//! `max d_G − C ≤ d_(H,w)(a, b) ≤ min d_G + C` over the `G`-pairs above `(a, b)`.

pub mod simplex;

use std::collections::HashSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constructions::SplitResult;
use crate::error::{Error, Result};
use crate::graph::{shortest_path, weighted_distances, DistanceMatrix, EdgeWeighting, Graph};
use crate::par::{find_first, map_indices, Execution};
use crate::qi::check_quasi_isometry;
use crate::witness::{refute_weighting, CertificateCase, Inequality, RefutationCertificate, RefuteOptions};
use crate::TOLERANCE;
use simplex::{Field, LinearProgram, LpResult, Sense};

pub const DEFAULT_EDGE_LIMIT: usize = 8;
/// Guard on `|grid|^|E(H)|` for [`solve_bruteforce`].
pub const GRID_CANDIDATE_LIMIT: f64 = 1e8;
pub const DEFAULT_LOWER_BOUND: f64 = 1e-3;
/// A path constraint is added only when violated by at least this much.
pub const CUT_VIOLATION: f64 = 1e-6;
/// Largest number of structural LP variables solved in exact arithmetic.
pub const EXACT_VARIABLE_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

/// What an UNSAT verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnsatBasis {
    /// No weighting at all can work (a collapsed pair or an empty interval).
    Proof,
    /// Exhaustive over the declared grid only.
    Grid,
    /// Heuristic; accepted because the caller asked for it.
    Hint,
}

/// Result of rounding every weight to the nearest integer `≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingProbe {
    pub weights: Vec<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<UnsatBasis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Decimal strings parallel to the edge list of `H` (SAT only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RefutationCertificate>,
    pub iterations: u64,
    pub constraints_generated: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integer_rounding: Option<RoundingProbe>,
}

impl SolveOutcome {
    fn new(status: Status) -> Self {
        SolveOutcome {
            status,
            basis: None,
            reason: None,
            weights: None,
            certificate: None,
            iterations: 0,
            constraints_generated: 0,
            integer_rounding: None,
        }
    }

    fn sat(split: &SplitResult, h: &Graph, c: u32, w: &EdgeWeighting) -> Result<Self> {
        let mut out = SolveOutcome::new(Status::Sat);
        out.weights = Some(w.to_decimal_strings());
        out.integer_rounding = Some(rounding_probe(split, h, c, w)?);
        Ok(out)
    }

    fn unsat(basis: UnsatBasis, reason: String, certificate: Option<RefutationCertificate>) -> Self {
        let mut out = SolveOutcome::new(Status::Unsat);
        out.basis = Some(basis);
        out.reason = Some(reason);
        out.certificate = certificate;
        out
    }

    fn unknown(reason: String) -> Self {
        let mut out = SolveOutcome::new(Status::Unknown);
        out.reason = Some(reason);
        out
    }

    /// The SAT weighting, rebuilt on `h`.
    pub fn weighting(&self, h: &Graph) -> Result<Option<EdgeWeighting>> {
        self.weights
            .as_ref()
            .map(|ws| EdgeWeighting::from_decimal_strs(h, ws))
            .transpose()
    }
}

/// `φ` is a `(1, C)`-quasi-isometry from `G` onto `(H, w)`.
pub fn verify_weighting(split: &SplitResult, h: &Graph, c: u32, w: &EdgeWeighting) -> Result<bool> {
    let g = &split.split_graph;
    Ok(check_quasi_isometry(g, None, h, Some(w), &split.projection, 1.0, f64::from(c))?.verdict)
}

fn rounding_probe(split: &SplitResult, h: &Graph, c: u32, w: &EdgeWeighting) -> Result<RoundingProbe> {
    let rounded = EdgeWeighting::from_f64(h, w.values().iter().map(|x| x.round().max(1.0)).collect())?;
    Ok(RoundingProbe {
        weights: rounded.to_decimal_strings(),
        verified: verify_weighting(split, h, c, &rounded)?,
    })
}

/// Largest and smallest `d_G(x, y)` over `G`-pairs above each `H`-pair.
struct PairBounds {
    n: usize,
    max: Vec<f64>,
    min: Vec<f64>,
    /// A `G`-pair attaining `max`.
    argmax: Vec<(usize, usize)>,
}

impl PairBounds {
    fn new(split: &SplitResult, h: &Graph) -> Result<Self> {
        let n = h.vertex_count();
        let dg = DistanceMatrix::hops(&split.split_graph)?;
        let phi = &split.projection;
        let mut b = PairBounds {
            n,
            max: vec![f64::NEG_INFINITY; n * n],
            min: vec![f64::INFINITY; n * n],
            argmax: vec![(0, 0); n * n],
        };
        for x in 0..dg.len() {
            for y in x + 1..dg.len() {
                let (a, c) = (phi.apply(x), phi.apply(y));
                let d = dg.get(x, y);
                for k in [a * n + c, c * n + a] {
                    if d > b.max[k] {
                        b.max[k] = d;
                        b.argmax[k] = (x, y);
                    }
                    b.min[k] = b.min[k].min(d);
                }
            }
        }
        Ok(b)
    }

    fn at(&self, a: usize, b: usize) -> (f64, f64) {
        (self.max[a * self.n + b], self.min[a * self.n + b])
    }

    /// A proof that no weighting works: two copies of one vertex further than
    /// `C` apart, or an `H`-pair whose required interval is empty.
    fn impossibility(&self, split: &SplitResult, c: u32) -> Option<(String, Option<RefutationCertificate>)> {
        let cf = f64::from(c);
        for a in 0..self.n {
            let (hi, _) = self.at(a, a);
            if hi > cf + TOLERANCE {
                let (x, y) = self.argmax[a * self.n + a];
                let cert = RefutationCertificate {
                    case: CertificateCase::Direct,
                    x,
                    y,
                    d_g: hi,
                    d_hw: 0.0,
                    c,
                    inequality: Inequality::GExceeds,
                    supporting_path: Some(vec![split.projection.apply(x)]),
                };
                return Some((
                    format!("copies of vertex {a} are {hi} apart in G but collapse in H"),
                    Some(cert),
                ));
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                let (hi, lo) = self.at(a, b);
                if hi - cf > lo + cf + TOLERANCE {
                    let reason = format!(
                        "pair ({a}, {b}) needs a distance in [{}, {}], which is empty",
                        hi - cf,
                        lo + cf
                    );
                    return Some((reason, None));
                }
            }
        }
        None
    }

    /// Fast form of the `(1, C)` check for weighted distances `dh` of `H`.
    fn admits(&self, dh: &[f64], c: f64) -> bool {
        (0..self.n).all(|a| {
            (a + 1..self.n).all(|b| {
                let (hi, lo) = self.at(a, b);
                let d = dh[a * self.n + b];
                hi - c <= d + TOLERANCE && d <= lo + c + TOLERANCE
            })
        })
    }
}

fn floyd_warshall(h: &Graph, weight: impl Fn(usize) -> f64) -> Vec<f64> {
    let n = h.vertex_count();
    let mut d = vec![f64::INFINITY; n * n];
    for v in 0..n {
        d[v * n + v] = 0.0;
    }
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let w = weight(e);
        d[u * n + v] = w;
        d[v * n + u] = w;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    d
}

/// Enumerates `grid^E(H)` in lexicographic order (edge 0 most significant)
/// and returns the first weighting that works, or a grid-exhaustive UNSAT.
pub fn solve_bruteforce(
    split: &SplitResult,
    h: &Graph,
    c: u32,
    grid: &[f64],
    edge_limit: usize,
    exec: Execution,
) -> Result<SolveOutcome> {
    split.orientation(h)?;
    let mut grid = grid.to_vec();
    if grid.is_empty() || grid.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
        return Err(Error::InvalidParameter(
            "grid must be a nonempty set of positive reals".into(),
        ));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let m = h.edge_count();
    if m > edge_limit {
        return Err(Error::TooLarge(format!(
            "{m} edges exceed the grid edge limit of {edge_limit}"
        )));
    }
    let k = grid.len();
    let total = (k as f64).powi(m as i32);
    if total > GRID_CANDIDATE_LIMIT {
        return Err(Error::TooLarge(format!(
            "{total} grid candidates exceed {GRID_CANDIDATE_LIMIT}"
        )));
    }
    let total = total as usize;
    let bounds = PairBounds::new(split, h)?;
    let cf = f64::from(c);
    let digits = |mut i: usize| {
        let mut ws = vec![0.0; m];
        for slot in ws.iter_mut().rev() {
            *slot = grid[i % k];
            i /= k;
        }
        ws
    };
    let hit = find_first(total, exec, |i| {
        let ws = digits(i);
        let dh = floyd_warshall(h, |e| ws[e]);
        if !bounds.admits(&dh, cf) {
            return None;
        }
        let w = EdgeWeighting::from_f64(h, ws).ok()?;
        verify_weighting(split, h, c, &w).ok()?.then_some(w)
    });
    let mut out = match &hit {
        Some((_, w)) => SolveOutcome::sat(split, h, c, w)?,
        None => SolveOutcome::unsat(
            UnsatBasis::Grid,
            format!("none of the {total} weightings over the grid works"),
            None,
        ),
    };
    out.iterations = hit.map_or(total, |(i, _)| i + 1) as u64;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// Exact up to [`EXACT_VARIABLE_LIMIT`] variables, floating point beyond.
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpOptions {
    pub max_rounds: usize,
    pub lower_bound: f64,
    pub arithmetic: Arithmetic,
    /// Cap on lazily generated path constraints.
    pub max_cuts: usize,
    /// Grid for the brute-force oracle consulted before answering UNSAT.
    pub oracle_grid: Option<Vec<f64>>,
    pub oracle_edge_limit: usize,
    /// Report an unconfirmed refutation as UNSAT with basis `hint`.
    pub accept_hint: bool,
    pub exec: Execution,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            max_rounds: 50,
            lower_bound: DEFAULT_LOWER_BOUND,
            arithmetic: Arithmetic::Auto,
            max_cuts: 20_000,
            oracle_grid: None,
            oracle_edge_limit: DEFAULT_EDGE_LIMIT,
            accept_hint: false,
            exec: Execution::default(),
        }
    }
}

struct PairConstraint {
    a: usize,
    b: usize,
    /// `max d_G − C`.
    lower: f64,
    /// `min d_G + C`.
    upper: f64,
}

struct LpModel<'a> {
    m: usize,
    pairs: &'a [PairConstraint],
    candidates: &'a [Vec<usize>],
    cuts: &'a [(usize, Vec<usize>)],
    lower_bound: f64,
}

impl LpModel<'_> {
    /// Variables: `w_e − lower_bound` per edge, then one slack per pair.
    fn build<F: Field>(&self) -> LinearProgram<F> {
        let m = self.m;
        let lb = self.lower_bound;
        let mut rows = Vec::with_capacity(self.pairs.len() + self.cuts.len());
        for (i, (p, cand)) in self.pairs.iter().zip(self.candidates).enumerate() {
            let mut coeffs: Vec<(usize, F)> = cand.iter().map(|&e| (e, F::one())).collect();
            coeffs.push((m + i, F::one().neg()));
            rows.push((
                coeffs,
                Sense::Le,
                F::from_f64(p.upper).sub(&F::from_f64(lb).mul(&F::from_f64(cand.len() as f64))),
            ));
        }
        for (i, path) in self.cuts {
            let coeffs = path.iter().map(|&e| (e, F::one())).collect();
            let rhs = F::from_f64(self.pairs[*i].lower).sub(&F::from_f64(lb).mul(&F::from_f64(path.len() as f64)));
            rows.push((coeffs, Sense::Ge, rhs));
        }
        let objective = (0..m + self.pairs.len())
            .map(|j| if j < m { F::zero() } else { F::one() })
            .collect();
        LinearProgram {
            n_vars: m + self.pairs.len(),
            objective,
            rows,
        }
    }

    fn solve<F: Field>(&self) -> Result<(Vec<f64>, u64)> {
        let (res, pivots) = simplex::solve::<F>(&self.build());
        match res {
            LpResult::Optimal { x, .. } => Ok((
                x[..self.m].iter().map(|v| self.lower_bound + v.to_f64()).collect(),
                pivots,
            )),
            // Elastic upper rows and unbounded-above weights keep the LP feasible;
            // minimising nonnegative slack keeps it bounded.
            other => Err(Error::InvalidParameter(format!(
                "unexpected linear program outcome {other:?}"
            ))),
        }
    }
}

/// Constraint-generation heuristic; see the module documentation.
pub fn solve_lp(split: &SplitResult, h: &Graph, c: u32, opts: &LpOptions) -> Result<SolveOutcome> {
    h.require_connected()?;
    let orientation = split.orientation(h)?;
    if !(opts.lower_bound.is_finite() && opts.lower_bound > 0.0) {
        return Err(Error::InvalidParameter("weight lower bound must be positive".into()));
    }
    let bounds = PairBounds::new(split, h)?;
    if let Some((reason, cert)) = bounds.impossibility(split, c) {
        return Ok(SolveOutcome::unsat(UnsatBasis::Proof, reason, cert));
    }
    let cf = f64::from(c);
    let n = h.vertex_count();
    let m = h.edge_count();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (hi, lo) = bounds.at(a, b);
            pairs.push(PairConstraint {
                a,
                b,
                lower: hi - cf,
                upper: lo + cf,
            });
        }
    }
    let exact = match opts.arithmetic {
        Arithmetic::Exact => true,
        Arithmetic::Float => false,
        Arithmetic::Auto => m + pairs.len() <= EXACT_VARIABLE_LIMIT,
    };

    let path_edges = |w: Option<&EdgeWeighting>, a: usize, b: usize| -> Result<Vec<usize>> {
        Ok(shortest_path(h, w, a, b)?.edge_ids().to_vec())
    };
    let mut candidates: Vec<Vec<usize>> = pairs
        .iter()
        .map(|p| path_edges(None, p.a, p.b))
        .collect::<Result<_>>()?;
    let mut seen_candidates: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut cuts: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut cut_set: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut iterations = 0u64;
    let mut weights: Vec<f64> = vec![1.0; m];
    let mut reason = format!("no verified weighting after {} rounds", opts.max_rounds);

    'rounds: for _round in 0..opts.max_rounds {
        seen_candidates.insert(candidates.clone());
        loop {
            let model = LpModel {
                m,
                pairs: &pairs,
                candidates: &candidates,
                cuts: &cuts,
                lower_bound: opts.lower_bound,
            };
            let (w, _) = if exact {
                model.solve::<BigRational>()?
            } else {
                model.solve::<f64>()?
            };
            iterations += 1;
            weights = w;
            let w = EdgeWeighting::from_f64(h, weights.clone())?;
            let rows = map_indices(n, opts.exec, |a| weighted_distances(h, &w, a));
            let mut fresh = Vec::new();
            for (i, p) in pairs.iter().enumerate() {
                let d = rows[p.a].as_ref().map_err(Clone::clone)?[p.b];
                if d < p.lower - CUT_VIOLATION {
                    let path = path_edges(Some(&w), p.a, p.b)?;
                    if cut_set.insert((i, path.clone())) {
                        fresh.push((i, path));
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            cuts.extend(fresh);
            if cuts.len() > opts.max_cuts {
                reason = format!("more than {} path constraints generated", opts.max_cuts);
                break 'rounds;
            }
        }
        let w = EdgeWeighting::from_f64(h, weights.clone())?;
        if verify_weighting(split, h, c, &w)? {
            let mut out = SolveOutcome::sat(split, h, c, &w)?;
            out.iterations = iterations;
            out.constraints_generated = cuts.len() as u64;
            return Ok(out);
        }
        candidates = pairs
            .iter()
            .map(|p| path_edges(Some(&w), p.a, p.b))
            .collect::<Result<_>>()?;
        if seen_candidates.contains(&candidates) {
            reason = "candidate paths repeated".into();
            break;
        }
    }

    let w = EdgeWeighting::from_f64(h, weights)?;
    let refute_opts = RefuteOptions {
        exec: opts.exec,
        ..Default::default()
    };
    let cert = refute_weighting(split, h, &orientation, &w, c, &refute_opts)?.certificate;
    let mut out = match (&opts.oracle_grid, cert) {
        (Some(grid), Some(cert)) if m <= opts.oracle_edge_limit => {
            match solve_bruteforce(split, h, c, grid, opts.oracle_edge_limit, opts.exec) {
                Ok(o) if o.status == Status::Unsat => {
                    SolveOutcome::unsat(UnsatBasis::Grid, format!("{reason}; grid oracle exhausted"), Some(cert))
                }
                Ok(_) => SolveOutcome::unknown(format!("{reason}; grid oracle found a weighting")),
                Err(_) if opts.accept_hint => SolveOutcome::unsat(UnsatBasis::Hint, reason, Some(cert)),
                Err(_) => SolveOutcome::unknown(reason),
            }
        }
        (_, Some(cert)) if opts.accept_hint => SolveOutcome::unsat(UnsatBasis::Hint, reason, Some(cert)),
        _ => SolveOutcome::unknown(reason),
    };
    out.iterations = iterations;
    out.constraints_generated = cuts.len() as u64;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{families, orient, vertex_split, OrientMode, Orientation};
    use crate::graph::diameter;

    fn split_of(h: &Graph, mode: OrientMode) -> SplitResult {
        vertex_split(h, &orient(h, mode)).unwrap()
    }

    #[test]
    fn single_edge_grid_examples() {
        let h = families::path(2);
        let s = split_of(&h, OrientMode::LowToHigh);
        let grid = [1.0, 2.0];
        let seq = Execution::Sequential;
        let zero = solve_bruteforce(&s, &h, 0, &grid, 8, seq).unwrap();
        assert_eq!(
            (zero.status, zero.basis, zero.iterations),
            (Status::Unsat, Some(UnsatBasis::Grid), 2)
        );
        let two = solve_bruteforce(&s, &h, 2, &grid, 8, seq).unwrap();
        assert_eq!(two.status, Status::Sat);
        assert_eq!(two.weights, Some(vec!["1".to_string()]));
        let one = solve_bruteforce(&s, &h, 1, &grid, 8, seq).unwrap();
        assert_eq!(one.weights, Some(vec!["2".to_string()]));
        assert!(one.integer_rounding.unwrap().verified);
    }

    #[test]
    fn grid_guards_and_single_value_grid() {
        let h = families::cycle(9).unwrap();
        let s = split_of(&h, OrientMode::LowToHigh);
        assert!(matches!(
            solve_bruteforce(&s, &h, 1, &[1.0], 8, Execution::Sequential),
            Err(Error::TooLarge(_))
        ));
        let t = families::complete(3);
        let s = split_of(&t, OrientMode::LowToHigh);
        let out = solve_bruteforce(&s, &t, 2, &[1.0], 8, Execution::Sequential).unwrap();
        let direct = verify_weighting(&s, &t, 2, &EdgeWeighting::unit(&t)).unwrap();
        assert_eq!(out.status == Status::Sat, direct);
        assert_eq!(out.iterations, 1);
        assert!(solve_bruteforce(&s, &t, 2, &[], 8, Execution::Sequential).is_err());
        assert!(solve_bruteforce(&s, &t, 2, &[0.0], 8, Execution::Sequential).is_err());
    }

    #[test]
    fn large_c_is_sat_in_the_first_round() {
        let h = families::petersen();
        let s = split_of(&h, OrientMode::Random { seed: 2 });
        let c = diameter(&s.split_graph).unwrap() as u32;
        let out = solve_lp(&s, &h, c, &LpOptions::default()).unwrap();
        assert_eq!(out.status, Status::Sat);
        assert_eq!(out.iterations, 1);
        let w = out.weighting(&h).unwrap().unwrap();
        assert!(verify_weighting(&s, &h, c, &w).unwrap());
        let p3 = families::path(3);
        let s3 = split_of(&p3, OrientMode::LowToHigh);
        let grid = solve_bruteforce(&s3, &p3, 5, &[1.0, 2.0], 8, Execution::Sequential).unwrap();
        assert_eq!(grid.weights, Some(vec!["1".to_string(), "1".to_string()]));
    }

    #[test]
    fn zero_c_is_proved_unsat() {
        let h = families::cycle(4).unwrap();
        let s = split_of(&h, OrientMode::Random { seed: 4 });
        let out = solve_lp(&s, &h, 0, &LpOptions::default()).unwrap();
        assert_eq!((out.status, out.basis), (Status::Unsat, Some(UnsatBasis::Proof)));
        let cert = out.certificate.unwrap();
        let any = EdgeWeighting::constant(&h, 3.5).unwrap();
        assert!(crate::witness::verify_certificate(&s, &h, &any, 0, &cert));
    }

    #[test]
    fn lp_agrees_with_grid_on_small_cycles() {
        let grid = [0.5, 1.0, 1.5, 2.0, 2.5];
        for n in 3..=5 {
            let h = families::cycle(n).unwrap();
            for seed in 0..4 {
                let s = split_of(&h, OrientMode::Random { seed });
                for c in 0..3 {
                    let oracle = solve_bruteforce(&s, &h, c, &grid, 8, Execution::Sequential).unwrap();
                    let opts = LpOptions {
                        oracle_grid: Some(grid.to_vec()),
                        ..Default::default()
                    };
                    let lp = solve_lp(&s, &h, c, &opts).unwrap();
                    if lp.status == Status::Sat {
                        assert!(verify_weighting(&s, &h, c, &lp.weighting(&h).unwrap().unwrap()).unwrap());
                        // Monotone in C.
                        assert!(verify_weighting(&s, &h, c + 1, &lp.weighting(&h).unwrap().unwrap()).unwrap());
                    }
                    if lp.status == Status::Unsat {
                        assert_ne!(oracle.status, Status::Sat, "n={n} seed={seed} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_and_float_modes_agree_on_status() {
        let h = families::cycle(6).unwrap();
        let arcs: Vec<(usize, usize)> = (0..6)
            .map(|i| if i % 2 == 0 { (i, (i + 1) % 6) } else { ((i + 1) % 6, i) })
            .collect();
        let o = Orientation::from_arcs(&h, &arcs).unwrap();
        let s = vertex_split(&h, &o).unwrap();
        for c in 1..4 {
            let ex = solve_lp(
                &s,
                &h,
                c,
                &LpOptions {
                    arithmetic: Arithmetic::Exact,
                    ..Default::default()
                },
            )
            .unwrap();
            let fl = solve_lp(
                &s,
                &h,
                c,
                &LpOptions {
                    arithmetic: Arithmetic::Float,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(ex.status, fl.status, "c={c}");
        }
    }

    #[test]
    fn tampered_weighting_fails_verification() {
        let h = families::path(2);
        let s = split_of(&h, OrientMode::LowToHigh);
        assert!(verify_weighting(&s, &h, 2, &EdgeWeighting::unit(&h)).unwrap());
        assert!(!verify_weighting(&s, &h, 2, &EdgeWeighting::constant(&h, 9.0).unwrap()).unwrap());
    }

    #[test]
    fn outcome_round_trips_through_json() {
        let h = families::path(3);
        let s = split_of(&h, OrientMode::LowToHigh);
        let out = solve_lp(&s, &h, 1, &LpOptions::default()).unwrap();
        let json = serde_json::to_string(&out).unwrap();
        let back: SolveOutcome = serde_json::from_str(&json).unwrap();
        assert_eq!(back, out);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
