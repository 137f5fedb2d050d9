//! Refutation certificates for split pairs.
//!
//! Given `H`, an orientation, a weighting `w` and the split `(G, φ)`, the
//! engine looks for a pair `x, y ∈ V(G)` with `|d_G(x, y) − d_(H,w)(φx, φy)| > C`,
//! which shows that `φ` is not a `(1, C)`-quasi-isometry onto `(H, w)`.
//! Candidates come from, in priority order:
//!
//! 1. an edge heavier than `C + 1`;
//! 2. a directed path of `4C` light edges, giving the pair `(v₀⁻, v_{4C}⁻)`;
//! 3. an alternating path of `4C` heavy edges, giving `(u₀⁺, u_{4C}⁺)`;
//! 4. a scan of all pairs.
//!
//! Every certificate is checked against recomputed distances before it is
//! returned, so the case analysis only steers the search.

use serde::{Deserialize, Serialize};

use crate::constructions::{Orientation, SplitResult};
use crate::error::{Error, Result};
use crate::graph::{
    girth, hop_distances, is_geodesic, shortest_cycle, shortest_path, weighted_distances, DistanceMatrix,
    EdgeWeighting, Graph, Path,
};
use crate::oriented::{find_for_witness_with, PathKind, PatternSearch, DEFAULT_SEARCH_BUDGET};
use crate::par::{join, Execution};
use crate::qi::check_with_matrices;
use crate::{constructions, TOLERANCE};

/// Default light/heavy boundary; an edge of exactly this weight is light.
pub const DEFAULT_LIGHT_THRESHOLD: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateCase {
    EdgeTooHeavy,
    LightDirected,
    HeavyAlternating,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `d_G > d_(H,w) + C`.
    GExceeds,
    /// `d_G < d_(H,w) − C`.
    GFallsShort,
}

impl Inequality {
    /// The inequality that `(d_g, d_hw)` violates at additive constant `c`, if any.
    pub fn classify(d_g: f64, d_hw: f64, c: f64) -> Option<Inequality> {
        if d_g > d_hw + c + TOLERANCE {
            Some(Inequality::GExceeds)
        } else if d_g < d_hw - c - TOLERANCE {
            Some(Inequality::GFallsShort)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefutationCertificate {
    pub case: CertificateCase,
    /// Vertex of `G`.
    pub x: usize,
    /// Vertex of `G`.
    pub y: usize,
    pub d_g: f64,
    pub d_hw: f64,
    pub c: u32,
    pub inequality: Inequality,
    /// Vertices of `H` along the path that led to the pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supporting_path: Option<Vec<usize>>,
}

/// Edge partition of `H` into light (`w ≤ threshold`) and heavy edges; both
/// parts are spanning subgraphs.
#[derive(Clone, Debug, PartialEq)]
pub struct LightHeavySplit {
    pub threshold: f64,
    pub light: Graph,
    pub heavy: Graph,
    /// Ids in `H` of the edges of `light`, in order.
    pub light_edges: Vec<usize>,
    pub heavy_edges: Vec<usize>,
}

pub fn light_heavy_split(h: &Graph, w: &EdgeWeighting, threshold: f64) -> Result<LightHeavySplit> {
    w.check_owner(h)?;
    let is_light: Vec<bool> = w.values().iter().map(|&x| x <= threshold + TOLERANCE).collect();
    let (light, light_edges) = h.spanning_subgraph(&is_light);
    let is_heavy: Vec<bool> = is_light.iter().map(|b| !b).collect();
    let (heavy, heavy_edges) = h.spanning_subgraph(&is_heavy);
    Ok(LightHeavySplit {
        threshold,
        light,
        heavy,
        light_edges,
        heavy_edges,
    })
}

/// Looks for a non-geodesic unit-weight path with at most `10C` edges.
///
/// Such a path exists iff the girth is at most `20C − 1`: an arc of
/// `⌊g/2⌋ + 1` edges of a shortest cycle is not geodesic, and a non-geodesic
/// path of length `k` closes up with a geodesic into a cycle of length at most
/// `2k − 1`.
pub fn check_claim_geodesic_unit(g: &Graph, c: u32) -> Option<Path> {
    let limit = 10 * c as usize;
    let gth = girth(g)?;
    let arc = gth / 2 + 1;
    if arc > limit {
        return None;
    }
    let cycle = shortest_cycle(g)?;
    let p = Path::new(g, cycle[..=arc].to_vec()).expect("cycle arcs are paths");
    debug_assert!(!is_geodesic(g, None, &p).unwrap_or(true));
    Some(p)
}

/// Applies the argument bounding edge weights by `C + 1`.
///
/// For an edge `uv` with `w(uv) > C + 1`: if `d_(H,w)(u, v) > C + 1` the
/// `G`-edge between the copies of `u` and `v` is a violating pair. Otherwise the
/// weighted geodesic from `u` to `v` avoids `uv`, and a vertex `x` on it far
/// from `u` in hops gives the pair `(u⁺, x⁺)`.
pub fn check_claim_edge_weight(
    h: &Graph,
    w: &EdgeWeighting,
    split: &SplitResult,
    c: u32,
) -> Result<Option<RefutationCertificate>> {
    w.check_owner(h)?;
    split.orientation(h)?;
    let cf = f64::from(c);
    let g = &split.split_graph;
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        if w.weight(e) <= cf + 1.0 + TOLERANCE {
            continue;
        }
        let dist_u = weighted_distances(h, w, u)?;
        if dist_u[v] > cf + 1.0 + TOLERANCE {
            let (x, y) = split.copy_edge(u, v).expect("every edge of H has a copy in G");
            if let Some(cert) = validated(g, h, w, split, c, CertificateCase::EdgeTooHeavy, x, y, Some(vec![u, v]))? {
                return Ok(Some(cert));
            }
            continue;
        }
        let geodesic = shortest_path(h, Some(w), u, v)?;
        let from_u = hop_distances(h, u)?;
        let mut along: Vec<usize> = geodesic.vertices()[1..].to_vec();
        // Vertices at least 2C + 2 hops from u first, as in the argument.
        along.sort_by_key(|&x| from_u[x] < 2 * c as usize + 2);
        for x in along {
            let pos = geodesic.vertices().iter().position(|&z| z == x).expect("on the path");
            let support = geodesic.vertices()[..=pos].to_vec();
            let pair = (split.plus(u), split.plus(x));
            if let Some(cert) = validated(
                g,
                h,
                w,
                split,
                c,
                CertificateCase::EdgeTooHeavy,
                pair.0,
                pair.1,
                Some(support),
            )? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Scans all paths with at most `4C` edges for one that is not a weighted
/// geodesic. Fails with [`Error::BudgetExceeded`] after `budget` extensions.
pub fn check_claim_hop_geodesic(h: &Graph, w: &EdgeWeighting, c: u32, budget: u64) -> Result<Option<Path>> {
    w.check_owner(h)?;
    let max_hop = 4 * c as usize;
    let n = h.vertex_count();
    let mut expansions = 0u64;
    let mut on_path = vec![false; n];
    for s in 0..n {
        let dist = weighted_distances(h, w, s)?;
        let mut path = vec![s];
        let mut length = vec![0.0f64];
        on_path[s] = true;
        // Iterative DFS: `cursor[d]` is the next neighbour index to try at depth d.
        let mut cursor = vec![0usize];
        while let Some(&v) = path.last() {
            let depth = path.len() - 1;
            let i = cursor[depth];
            if depth == max_hop || i >= h.degree(v) {
                on_path[v] = false;
                path.pop();
                length.pop();
                cursor.pop();
                continue;
            }
            cursor[depth] += 1;
            let (u, e) = h.neighbors(v)[i];
            if on_path[u] {
                continue;
            }
            expansions += 1;
            if expansions > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let len = length[depth] + w.weight(e);
            path.push(u);
            length.push(len);
            cursor.push(0);
            on_path[u] = true;
            if u > s && len > dist[u] + TOLERANCE {
                let p = Path::new(h, path.clone()).expect("DFS keeps a simple path");
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefuteOptions {
    pub threshold: f64,
    /// Node-expansion cap for each oriented path search.
    pub budget: u64,
    pub exec: Execution,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions {
            threshold: DEFAULT_LIGHT_THRESHOLD,
            budget: DEFAULT_SEARCH_BUDGET,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefuteMetadata {
    pub light_edges: usize,
    pub heavy_edges: usize,
    /// DSATUR colour counts of the two sides.
    pub light_chi_upper: usize,
    pub heavy_chi_upper: usize,
    pub light_expansions: u64,
    pub heavy_expansions: u64,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefuteReport {
    pub certificate: Option<RefutationCertificate>,
    pub metadata: RefuteMetadata,
}

struct Context<'a> {
    split: &'a SplitResult,
    dg: DistanceMatrix,
    dhw: DistanceMatrix,
    c: u32,
}

impl Context<'_> {
    fn certify(&self, case: CertificateCase, x: usize, y: usize, support: &[usize]) -> Option<RefutationCertificate> {
        let d_g = self.dg.get(x, y);
        let d_hw = self
            .dhw
            .get(self.split.projection.apply(x), self.split.projection.apply(y));
        let inequality = Inequality::classify(d_g, d_hw, f64::from(self.c))?;
        Some(RefutationCertificate {
            case,
            x,
            y,
            d_g,
            d_hw,
            c: self.c,
            inequality,
            supporting_path: Some(support.to_vec()),
        })
    }

    /// Searches one side for a path of `4C` edges whose end copies violate.
    fn side(
        &self,
        sub: &Graph,
        o: &Orientation,
        kind: PathKind,
        budget: u64,
    ) -> Result<(Option<RefutationCertificate>, u64, bool)> {
        let hop = 4 * self.c as usize;
        if hop == 0 || sub.edge_count() < hop {
            return Ok((None, 0, false));
        }
        let mut found = None;
        let run = find_for_witness_with(sub, o, hop, kind, budget, |vs| {
            let (first, last) = (vs[0], vs[vs.len() - 1]);
            let cert = match kind {
                PathKind::Directed => self.certify(
                    CertificateCase::LightDirected,
                    self.split.minus(first),
                    self.split.minus(last),
                    vs,
                ),
                PathKind::Alternating => self.certify(
                    CertificateCase::HeavyAlternating,
                    self.split.plus(first),
                    self.split.plus(last),
                    vs,
                ),
            };
            found = cert;
            found.is_some()
        })?;
        Ok((found, run.expansions, run.outcome == PatternSearch::BudgetExceeded))
    }
}

/// Builds a certificate for `(x, y)` from freshly computed distances, or
/// `None` when the pair does not violate.
#[allow(clippy::too_many_arguments)]
fn validated(
    g: &Graph,
    h: &Graph,
    w: &EdgeWeighting,
    split: &SplitResult,
    c: u32,
    case: CertificateCase,
    x: usize,
    y: usize,
    support: Option<Vec<usize>>,
) -> Result<Option<RefutationCertificate>> {
    let d_g = hop_distances(g, x)?[y];
    let d_hw = weighted_distances(h, w, split.projection.apply(x))?[split.projection.apply(y)];
    let d_g = if d_g == crate::graph::UNREACHABLE {
        f64::INFINITY
    } else {
        d_g as f64
    };
    Ok(
        Inequality::classify(d_g, d_hw, f64::from(c)).map(|inequality| RefutationCertificate {
            case,
            x,
            y,
            d_g,
            d_hw,
            c,
            inequality,
            supporting_path: support,
        }),
    )
}

/// Decides whether `φ` is a `(1, C)`-quasi-isometry onto `(H, w)`, returning
/// a validated certificate when it is not.
pub fn refute_weighting(
    split: &SplitResult,
    h: &Graph,
    o: &Orientation,
    w: &EdgeWeighting,
    c: u32,
    opts: &RefuteOptions,
) -> Result<RefuteReport> {
    split.check_built_from(h, o)?;
    w.check_owner(h)?;
    let lh = light_heavy_split(h, w, opts.threshold)?;
    let mut meta = RefuteMetadata {
        light_edges: lh.light_edges.len(),
        heavy_edges: lh.heavy_edges.len(),
        light_chi_upper: constructions::greedy_chi(&lh.light),
        heavy_chi_upper: constructions::greedy_chi(&lh.heavy),
        light_expansions: 0,
        heavy_expansions: 0,
        budget_exceeded: false,
    };

    if let Some(cert) = check_claim_edge_weight(h, w, split, c)? {
        return Ok(RefuteReport {
            certificate: Some(cert),
            metadata: meta,
        });
    }

    let (dg, dhw) = join(
        opts.exec,
        || DistanceMatrix::compute(&split.split_graph, None, opts.exec),
        || DistanceMatrix::compute(h, Some(w), opts.exec),
    );
    let ctx = Context {
        split,
        dg: dg?,
        dhw: dhw?,
        c,
    };

    let light_o = o.restrict(&lh.light, &lh.light_edges);
    let heavy_o = o.restrict(&lh.heavy, &lh.heavy_edges);
    let (light, heavy) = join(
        opts.exec,
        || ctx.side(&lh.light, &light_o, PathKind::Directed, opts.budget),
        || ctx.side(&lh.heavy, &heavy_o, PathKind::Alternating, opts.budget),
    );
    let (light_cert, light_exp, light_over) = light?;
    let (heavy_cert, heavy_exp, heavy_over) = heavy?;
    meta.light_expansions = light_exp;
    meta.heavy_expansions = heavy_exp;
    meta.budget_exceeded = light_over || heavy_over;
    if let Some(cert) = light_cert.or(heavy_cert) {
        return Ok(RefuteReport {
            certificate: Some(cert),
            metadata: meta,
        });
    }

    let report = check_with_matrices(&ctx.dg, &ctx.dhw, &split.projection, 1.0, f64::from(c), opts.exec)?;
    let pair = report.lower_violation.or(report.upper_violation);
    let certificate = pair.and_then(|v| {
        let support = shortest_path(h, Some(w), split.projection.apply(v.x), split.projection.apply(v.y)).ok()?;
        ctx.certify(CertificateCase::Direct, v.x, v.y, support.vertices())
    });
    debug_assert_eq!(certificate.is_none(), report.verdict);
    Ok(RefuteReport {
        certificate,
        metadata: meta,
    })
}

/// Recomputes both distances of `cert` from scratch and confirms the recorded
/// values and the recorded inequality at additive constant `c`.
pub fn verify_certificate(
    split: &SplitResult,
    h: &Graph,
    w: &EdgeWeighting,
    c: u32,
    cert: &RefutationCertificate,
) -> bool {
    let g = &split.split_graph;
    if w.check_owner(h).is_err() || split.orientation(h).is_err() {
        return false;
    }
    if cert.x >= g.vertex_count() || cert.y >= g.vertex_count() {
        return false;
    }
    match validated(g, h, w, split, c, cert.case, cert.x, cert.y, None) {
        Ok(Some(fresh)) => {
            fresh.inequality == cert.inequality
                && (fresh.d_g - cert.d_g).abs() <= TOLERANCE
                && (fresh.d_hw - cert.d_hw).abs() <= TOLERANCE
        }
        _ => false,
    }
}
