use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Fixed-point scale for exactly stored weights (six decimal places).
pub const MICRO_SCALE: i64 = 1_000_000;

const MAX_EXACT_DECIMALS: usize = 6;

/// Which weight codomain a caller insists on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightDomain {
    PositiveReal,
    Natural,
}

/// Strictly positive weight per edge of one specific graph.
///
/// When every weight has at most six decimal places the weights are also
/// kept as integer multiples of `10⁻⁶` and all distance computations run in
/// integer arithmetic; otherwise they fall back to `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeWeighting {
    owner: u64,
    values: Vec<f64>,
    micros: Option<Vec<i64>>,
}

impl EdgeWeighting {
    pub fn unit(g: &Graph) -> Self {
        Self::constant(g, 1.0).expect("unit weights are valid")
    }

    pub fn constant(g: &Graph, value: f64) -> Result<Self> {
        Self::from_f64(g, vec![value; g.edge_count()])
    }

    /// Parses decimal strings, one per edge in edge-id order.
    pub fn from_decimal_strs<S: AsRef<str>>(g: &Graph, weights: &[S]) -> Result<Self> {
        if weights.len() != g.edge_count() {
            return Err(Error::LengthMismatch {
                expected: g.edge_count(),
                found: weights.len(),
            });
        }
        let parsed: Vec<Parsed> = weights
            .iter()
            .map(|s| parse_weight(s.as_ref()))
            .collect::<Result<_>>()?;
        let micros: Option<Vec<i64>> = parsed.iter().map(|p| p.micros).collect();
        let values = match &micros {
            Some(m) => m.iter().map(|&x| x as f64 / MICRO_SCALE as f64).collect(),
            None => parsed.iter().map(|p| p.value).collect(),
        };
        Ok(EdgeWeighting {
            owner: g.fingerprint(),
            values,
            micros,
        })
    }

    /// Builds a weighting from floats via their shortest decimal form, so a
    /// weighting survives a round trip through its decimal strings.
    pub fn from_f64(g: &Graph, weights: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::NonPositiveWeight(bad.to_string()));
        }
        let strs: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
        let mut out = Self::from_decimal_strs(g, &strs)?;
        if out.micros.is_none() {
            out.values = weights;
        }
        Ok(out)
    }

    pub fn owner(&self) -> u64 {
        self.owner
    }

    pub fn check_owner(&self, g: &Graph) -> Result<()> {
        if self.owner == g.fingerprint() && self.values.len() == g.edge_count() {
            Ok(())
        } else {
            Err(Error::OwnerMismatch { what: "edge weighting" })
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self, edge: usize) -> f64 {
        self.values[edge]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Integer weights in units of `10⁻⁶`, when stored exactly.
    pub fn micros(&self) -> Option<&[i64]> {
        self.micros.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.micros.is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(|&w| w == 1.0)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        match &self.micros {
            Some(m) => m.iter().map(|&x| format_micros(x)).collect(),
            None => self.values.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn check_domain(&self, domain: WeightDomain) -> Result<()> {
        match domain {
            WeightDomain::PositiveReal => Ok(()),
            WeightDomain::Natural => match self.values.iter().find(|w| w.fract() != 0.0) {
                Some(w) => Err(Error::InvalidParameter(format!("weight {w} is not a natural number"))),
                None => Ok(()),
            },
        }
    }
}

struct Parsed {
    value: f64,
    micros: Option<i64>,
}

fn parse_weight(s: &str) -> Result<Parsed> {
    let t = s.trim();
    let value: f64 = t.parse().map_err(|_| Error::ParseWeight(s.to_string()))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonPositiveWeight(s.to_string()));
    }
    Ok(Parsed {
        value,
        micros: exact_micros(t),
    })
}

/// `Some` for plain decimals `ddd[.dddddd]` with at most six fractional digits.
fn exact_micros(t: &str) -> Option<i64> {
    let t = t.strip_prefix('+').unwrap_or(t);
    let (int, frac) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    let digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits(int) || !digits(frac) {
        return None;
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() > MAX_EXACT_DECIMALS {
        return None;
    }
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let mut f: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    for _ in frac.len()..MAX_EXACT_DECIMALS {
        f *= 10;
    }
    whole.checked_mul(MICRO_SCALE)?.checked_add(f)
}

fn format_micros(x: i64) -> String {
    let whole = x / MICRO_SCALE;
    let frac = x % MICRO_SCALE;
    if frac == 0 {
        whole.to_string()
    } else {
        let f = format!("{frac:06}");
        format!("{whole}.{}", f.trim_end_matches('0'))
    }
}
