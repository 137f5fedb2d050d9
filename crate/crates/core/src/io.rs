//! Instance files and plain-text graph readers.
//!
//! The JSON instance format holds a graph with optional decimal-string
//! weights, an optional orientation (one tail per edge), an optional vertex
//! map into an embedded codomain instance, and generator metadata. Field
//! order is fixed, so `serialize(parse(s)) == s` for anything this module
//! wrote.
//!
//! Text input is either a whitespace edge list (`u v [weight]` per line,
//! 0-based, `#` or `%` comments) or DIMACS (`p edge n m`, `e u v`, 1-based).

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::constructions::{greedy_chi, Orientation};
use crate::error::{Error, Result};
use crate::graph::{girth, EdgeWeighting, Graph};
use crate::qi::VertexMap;

/// `null`-free girth: a number, or `"infinity"` for forests.
mod girth_repr {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Finite(usize),
        Named(String),
    }

    pub fn serialize<S: Serializer>(g: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match g {
            Some(n) => Repr::Finite(*n),
            None => Repr::Named("infinity".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<usize>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Finite(n) => Ok(Some(n)),
            Repr::Named(s) if s == "infinity" => Ok(None),
            Repr::Named(s) => Err(serde::de::Error::custom(format!(
                "girth must be a number or \"infinity\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(with = "girth_repr")]
    pub girth: Option<usize>,
    pub chi_greedy: usize,
}

impl Metadata {
    pub fn describe(g: &Graph, generator: &str, seed: Option<u64>, parameters: Map<String, Value>) -> Self {
        Metadata {
            generator: generator.into(),
            seed,
            parameters,
            girth: girth(g),
            chi_greedy: greedy_chi(g),
        }
    }
}

/// Map from the instance graph into `codomain`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSection {
    pub image: Vec<usize>,
    pub codomain: Box<InstanceFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    /// Tail vertex of each edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSection>,
    pub metadata: Metadata,
}

impl InstanceFile {
    pub fn new(graph: Graph, metadata: Metadata) -> Self {
        InstanceFile {
            graph,
            weights: None,
            orientation: None,
            map: None,
            metadata,
        }
    }

    /// Parses and validates all parallel arrays against the edge list.
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn validate(&self) -> Result<()> {
        self.weighting()?;
        self.orientation_of()?;
        if let Some(m) = &self.map {
            m.codomain.validate()?;
            self.vertex_map()?;
        }
        Ok(())
    }

    pub fn weighting(&self) -> Result<Option<EdgeWeighting>> {
        self.weights
            .as_ref()
            .map(|ws| EdgeWeighting::from_decimal_strs(&self.graph, ws))
            .transpose()
    }

    pub fn orientation_of(&self) -> Result<Option<Orientation>> {
        self.orientation
            .as_ref()
            .map(|t| Orientation::from_tails(&self.graph, t))
            .transpose()
    }

    pub fn vertex_map(&self) -> Result<Option<VertexMap>> {
        let Some(m) = &self.map else { return Ok(None) };
        if m.image.len() != self.graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.graph.vertex_count(),
                found: m.image.len(),
            });
        }
        VertexMap::new(m.image.clone(), m.codomain.graph.vertex_count()).map(Some)
    }

    pub fn set_weighting(&mut self, w: Option<&EdgeWeighting>) {
        self.weights = w.map(EdgeWeighting::to_decimal_strings);
    }

    pub fn set_orientation(&mut self, o: Option<&Orientation>) {
        self.orientation = o.map(Orientation::tails);
    }
}

/// Graph and optional weights read from a text format.
#[derive(Clone, Debug, PartialEq)]
pub struct TextGraph {
    pub graph: Graph,
    pub weights: Option<EdgeWeighting>,
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Format(format!("line {line}: expected a vertex index, got {tok:?}")))
}

fn finish(n: usize, edges: Vec<(usize, usize)>, weights: Vec<Option<String>>) -> Result<TextGraph> {
    let graph = Graph::new(n, edges)?;
    let weights = match weights.iter().filter(|w| w.is_some()).count() {
        0 => None,
        k if k == weights.len() => {
            let ws: Vec<String> = weights.into_iter().flatten().collect();
            Some(EdgeWeighting::from_decimal_strs(&graph, &ws)?)
        }
        _ => return Err(Error::Format("either every edge or no edge must carry a weight".into())),
    };
    Ok(TextGraph { graph, weights })
}

/// Whitespace edge list, 0-based. An optional first line `n` fixes the
/// vertex count (otherwise it is one more than the largest index).
pub fn parse_edge_list(text: &str) -> Result<TextGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split(['#', '%']).next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [count] if first => n = Some(parse_usize(count, i + 1)?),
            [u, v] | [u, v, _] => {
                edges.push((parse_usize(u, i + 1)?, parse_usize(v, i + 1)?));
                weights.push(toks.get(2).map(|s| s.to_string()));
            }
            _ => return Err(Error::Format(format!("line {}: expected `u v [weight]`", i + 1))),
        }
        first = false;
    }
    let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    finish(n.unwrap_or(needed), edges, weights)
}

/// DIMACS graph format: `c` comments, one `p edge n m` line, `e u v` edges
/// with 1-based vertices.
pub fn parse_dimacs(text: &str) -> Result<TextGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] | ["c", ..] => {}
            ["p", _, n, m] if header.is_none() => header = Some((parse_usize(n, i + 1)?, parse_usize(m, i + 1)?)),
            ["e", u, v] if header.is_some() => {
                let (u, v) = (parse_usize(u, i + 1)?, parse_usize(v, i + 1)?);
                if u == 0 || v == 0 {
                    return Err(Error::Format(format!("line {}: DIMACS vertices are 1-based", i + 1)));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(Error::Format(format!("line {}: unexpected DIMACS line {raw:?}", i + 1))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Format("missing `p edge n m` line".into()))?;
    if m != edges.len() {
        return Err(Error::LengthMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    let none = vec![None; edges.len()];
    finish(n, edges, none)
}

/// Parsed input of any supported format.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyInput {
    Instance(Box<InstanceFile>),
    Text(TextGraph),
}

/// Detects the format from the content: JSON object, DIMACS (a `p` line), or
/// a plain edge list.
pub fn parse_any(text: &str) -> Result<AnyInput> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return InstanceFile::from_json(text).map(|i| AnyInput::Instance(Box::new(i)));
    }
    let dimacs = text.lines().any(|l| l.trim_start().starts_with("p "));
    if dimacs {
        parse_dimacs(text).map(AnyInput::Text)
    } else {
        parse_edge_list(text).map(AnyInput::Text)
    }
}

/// Reads any supported format into an instance; text inputs get metadata
/// computed from the graph.
pub fn read_instance(text: &str) -> Result<InstanceFile> {
    match parse_any(text)? {
        AnyInput::Instance(i) => Ok(*i),
        AnyInput::Text(t) => {
            let meta = Metadata::describe(&t.graph, "text", None, Map::new());
            let mut inst = InstanceFile::new(t.graph, meta);
            inst.set_weighting(t.weights.as_ref());
            Ok(inst)
        }
    }
}
