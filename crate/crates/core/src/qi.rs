//! `(L, C)`-quasi-isometry checks between finite (optionally weighted) graphs.
//!
//! A map `φ: V(G) → V(H)` passes at `(L, C)` when for all `x, y`
//!
//! ```text
//! d_G(x, y) / L − C  ≤  d_H(φx, φy)  ≤  L · d_G(x, y) + C
//! ```
//!
//! and every vertex of `H` lies within `C` of the image. All comparisons use
//! the absolute tolerance [`TOLERANCE`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, EdgeWeighting, Graph};
use crate::par::{map_indices, Execution};
use crate::TOLERANCE;

/// Total map from the vertices of a domain graph to a codomain graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    image: Vec<usize>,
    codomain_size: usize,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, codomain_size: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&v| v >= codomain_size) {
            return Err(Error::MapMismatch(format!(
                "image vertex {bad} outside codomain of size {codomain_size}"
            )));
        }
        Ok(VertexMap { image, codomain_size })
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            image: (0..n).collect(),
            codomain_size: n,
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn check(&self, g: &Graph, h: &Graph) -> Result<()> {
        if self.image.len() != g.vertex_count() {
            return Err(Error::MapMismatch(format!(
                "map has {} entries, domain has {} vertices",
                self.image.len(),
                g.vertex_count()
            )));
        }
        if self.codomain_size != h.vertex_count() {
            return Err(Error::MapMismatch(format!(
                "map targets {} vertices, codomain has {}",
                self.codomain_size,
                h.vertex_count()
            )));
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> Result<VertexMap> {
        if self.codomain_size != other.domain_size() {
            return Err(Error::MapMismatch("maps do not compose".into()));
        }
        VertexMap::new(
            self.image.iter().map(|&v| other.image[v]).collect(),
            other.codomain_size,
        )
    }
}

/// A pair of domain vertices and the two distances that break an inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub d_g: f64,
    pub d_h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QiReport {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub verdict: bool,
    /// Worst pair with `d_H > L·d_G + C`.
    pub upper_violation: Option<Violation>,
    /// Worst pair with `d_G / L − C > d_H`.
    pub lower_violation: Option<Violation>,
    /// `max_y min_x d_H(y, φx)`.
    pub surjectivity_radius: f64,
    /// Smallest `C` that passes at this `L`.
    pub tight_c_for_l: f64,
}

/// Per-row partial result; rows are folded in index order.
#[derive(Clone, Default)]
struct RowScan {
    upper: Option<(f64, Violation)>,
    lower: Option<(f64, Violation)>,
    slack: f64,
}

fn keep_worse(slot: &mut Option<(f64, Violation)>, excess: f64, v: Violation) {
    // Strictly larger wins so the first pair in (x, y) order keeps ties.
    if slot.as_ref().is_none_or(|(e, _)| excess > *e) {
        *slot = Some((excess, v));
    }
}

/// Scans every unordered pair once given precomputed distance matrices.
pub fn check_with_matrices(
    dg: &DistanceMatrix,
    dh: &DistanceMatrix,
    map: &VertexMap,
    l: f64,
    c: f64,
    exec: Execution,
) -> Result<QiReport> {
    if !(l.is_finite() && l >= 1.0) {
        return Err(Error::InvalidParameter(format!("L = {l} must be a real number ≥ 1")));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidParameter(format!("C = {c} must be a nonnegative real")));
    }
    if dg.len() != map.domain_size() || dh.len() != map.codomain_size() {
        return Err(Error::MapMismatch("distance matrices do not match the map".into()));
    }
    let n = dg.len();
    let rows = map_indices(n, exec, |x| {
        let mut scan = RowScan::default();
        let px = map.apply(x);
        let dh_row = dh.row(px);
        for y in x + 1..n {
            let d_g = dg.get(x, y);
            let d_h = dh_row[map.apply(y)];
            let up = d_h - l * d_g;
            let low = d_g / l - d_h;
            scan.slack = scan.slack.max(up).max(low);
            if up - c > TOLERANCE {
                keep_worse(&mut scan.upper, up - c, Violation { x, y, d_g, d_h });
            }
            if low - c > TOLERANCE {
                keep_worse(&mut scan.lower, low - c, Violation { x, y, d_g, d_h });
            }
        }
        scan
    });
    let mut total = RowScan::default();
    for r in rows {
        total.slack = total.slack.max(r.slack);
        if let Some((e, v)) = r.upper {
            keep_worse(&mut total.upper, e, v);
        }
        if let Some((e, v)) = r.lower {
            keep_worse(&mut total.lower, e, v);
        }
    }
    let radius = surjectivity_radius(dh, map);
    let tight = total.slack.max(radius).max(0.0);
    let verdict = total.upper.is_none() && total.lower.is_none() && radius <= c + TOLERANCE;
    Ok(QiReport {
        l,
        c,
        verdict,
        upper_violation: total.upper.map(|(_, v)| v),
        lower_violation: total.lower.map(|(_, v)| v),
        surjectivity_radius: radius,
        tight_c_for_l: tight,
    })
}

fn surjectivity_radius(dh: &DistanceMatrix, map: &VertexMap) -> f64 {
    let mut hit = vec![false; dh.len()];
    for &v in map.image() {
        hit[v] = true;
    }
    let targets: Vec<usize> = (0..dh.len()).filter(|&v| hit[v]).collect();
    (0..dh.len())
        .map(|y| targets.iter().map(|&t| dh.get(y, t)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Exhaustive `(L, C)` check. Both graphs must be connected.
pub fn check_quasi_isometry(
    g: &Graph,
    wg: Option<&EdgeWeighting>,
    h: &Graph,
    wh: Option<&EdgeWeighting>,
    map: &VertexMap,
    l: f64,
    c: f64,
) -> Result<QiReport> {
    map.check(g, h)?;
    let dg = DistanceMatrix::of(g, wg)?;
    let dh = DistanceMatrix::of(h, wh)?;
    check_with_matrices(&dg, &dh, map, l, c, Execution::default())
}

/// Smallest `C` for which the map is an `(L, C)`-quasi-isometry.
pub fn minimal_additive(
    g: &Graph,
    wg: Option<&EdgeWeighting>,
    h: &Graph,
    wh: Option<&EdgeWeighting>,
    map: &VertexMap,
    l: f64,
) -> Result<f64> {
    Ok(check_quasi_isometry(g, wg, h, wh, map, l, 0.0)?.tight_c_for_l)
}

/// Default guard on `|V(H)|^|V(G)|` for [`exists_qi_map_bruteforce`].
pub const DEFAULT_MAP_ENUMERATION_LIMIT: f64 = 1e8;

/// Searches every map `V(G) → V(H)` in lexicographic order (with pair-wise
/// pruning) and returns the first `(L, C)`-quasi-isometry, or `None` when
/// none exists.
pub fn exists_qi_map_bruteforce(
    g: &Graph,
    h: &Graph,
    wh: Option<&EdgeWeighting>,
    l: f64,
    c: f64,
    limit: f64,
) -> Result<Option<VertexMap>> {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let count = (m as f64).powi(n as i32);
    if count > limit {
        return Err(Error::TooLarge(format!(
            "{m}^{n} candidate maps exceed the limit {limit}"
        )));
    }
    if !(l.is_finite() && l >= 1.0) || !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidParameter(format!("invalid parameters L = {l}, C = {c}")));
    }
    let dg = DistanceMatrix::hops(g)?;
    let dh = DistanceMatrix::of(h, wh)?;
    if n == 0 {
        return Ok(None);
    }
    let mut image = vec![0usize; n];
    let fits = |image: &[usize], k: usize| {
        (0..k).all(|j| {
            let d_g = dg.get(j, k);
            let d_h = dh.get(image[j], image[k]);
            d_h <= l * d_g + c + TOLERANCE && d_g / l - c <= d_h + TOLERANCE
        })
    };
    // Iterative odometer over partial assignments.
    let mut k = 0usize;
    let mut fresh = true;
    loop {
        if !fresh {
            image[k] += 1;
        }
        fresh = false;
        if image[k] == m {
            if k == 0 {
                return Ok(None);
            }
            image[k] = 0;
            k -= 1;
            continue;
        }
        if !fits(&image, k) {
            continue;
        }
        if k + 1 < n {
            k += 1;
            image[k] = 0;
            fresh = true;
            continue;
        }
        let candidate = VertexMap::new(image.clone(), m)?;
        if surjectivity_radius(&dh, &candidate) <= c + TOLERANCE {
            return Ok(Some(candidate));
        }
    }
}
