//! Named graphs with fixed labelings.
//!
//! The cubic graphs are built from LCF notation: the Hamiltonian cycle
//! `1-2-...-n-1` plus, at vertex `i`, a chord to `i + pattern[(i-1) mod len]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circulant::{add_mod, degrees, odd_jumps_up_to, Circulant, CirculantError, Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("LCF pattern must not be empty and must repeat at least once")]
    EmptyPattern,
    #[error("LCF offset {offset} is outside 2..={max} in absolute value (n = {n})")]
    OffsetOutOfRange { offset: i32, n: u32, max: u32 },
    #[error("LCF pattern is inconsistent: vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: Vertex, degree: u32 },
    #[error(
        "unknown graph {0:?}; known: franklin, heawood, desargues, k33, k44, cycle(n), complete_bipartite(k)"
    )]
    UnknownName(String),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
}

/// A cubic Hamiltonian graph in LCF notation, `[pattern]^repeats`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcfSpec {
    pub pattern: Vec<i32>,
    pub repeats: u32,
}

impl LcfSpec {
    pub fn new(pattern: &[i32], repeats: u32) -> Self {
        LcfSpec {
            pattern: pattern.to_vec(),
            repeats,
        }
    }

    pub fn n(&self) -> u32 {
        self.pattern.len() as u32 * self.repeats
    }
}

impl fmt::Display for LcfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, o) in self.pattern.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "]^{}", self.repeats)
    }
}

/// Edges of the LCF graph, sorted; fails if the offsets do not pair up into
/// a cubic graph.
pub fn from_lcf(spec: &LcfSpec) -> Result<Vec<Edge>, CatalogError> {
    let n = spec.n();
    if n == 0 {
        return Err(CatalogError::EmptyPattern);
    }
    let max = n.saturating_sub(2);
    if let Some(&offset) = spec
        .pattern
        .iter()
        .find(|o| o.unsigned_abs() < 2 || o.unsigned_abs() > max)
    {
        return Err(CatalogError::OffsetOutOfRange { offset, n, max });
    }
    let mut edges = BTreeSet::new();
    for i in 1..=n {
        edges.insert(Edge::new(i, add_mod(n, i, 1))?);
        let offset = spec.pattern[((i - 1) as usize) % spec.pattern.len()];
        edges.insert(Edge::new(i, add_mod(n, i, offset as i64))?);
    }
    let edges: Vec<Edge> = edges.into_iter().collect();
    if let Some((i, &degree)) = degrees(&edges, n).iter().enumerate().find(|(_, &d)| d != 3) {
        return Err(CatalogError::NotCubic {
            vertex: i as u32 + 1,
            degree,
        });
    }
    Ok(edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Franklin,
    Heawood,
    Desargues,
    K33,
    K44,
    Cycle(u32),
    CompleteBipartite(u32),
}

impl NamedGraph {
    /// The cubic named graphs and the small circulant instances, for listings.
    pub const LISTED: [NamedGraph; 5] = [
        NamedGraph::Franklin,
        NamedGraph::Heawood,
        NamedGraph::Desargues,
        NamedGraph::K33,
        NamedGraph::K44,
    ];

    pub fn lcf(&self) -> Option<LcfSpec> {
        match self {
            NamedGraph::Franklin => Some(LcfSpec::new(&[5, -5], 6)),
            NamedGraph::Heawood => Some(LcfSpec::new(&[5, -5], 7)),
            NamedGraph::Desargues => Some(LcfSpec::new(&[5, -5, 9, -9], 5)),
            _ => None,
        }
    }

    pub fn circulant(&self) -> Option<Result<Circulant, CirculantError>> {
        match *self {
            NamedGraph::K33 => Some(Circulant::new(6, &[1, 3])),
            NamedGraph::K44 => Some(Circulant::new(8, &[1, 3])),
            NamedGraph::Cycle(n) => Some(Circulant::new(n, &[1])),
            NamedGraph::CompleteBipartite(k) => Some(Circulant::new(2 * k, &odd_jumps_up_to(k.max(1)))),
            _ => None,
        }
    }

    /// Vertex count and sorted edge list.
    pub fn build(&self) -> Result<(u32, Vec<Edge>), CatalogError> {
        if let Some(spec) = self.lcf() {
            return Ok((spec.n(), from_lcf(&spec)?));
        }
        let c = self.circulant().expect("non-LCF graphs are circulants")?;
        Ok((c.n(), c.edges()))
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Franklin => write!(f, "franklin"),
            NamedGraph::Heawood => write!(f, "heawood"),
            NamedGraph::Desargues => write!(f, "desargues"),
            NamedGraph::K33 => write!(f, "k33"),
            NamedGraph::K44 => write!(f, "k44"),
            NamedGraph::Cycle(n) => write!(f, "cycle({n})"),
            NamedGraph::CompleteBipartite(k) => write!(f, "complete_bipartite({k})"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let name = s.trim().to_ascii_lowercase();
        let unknown = || CatalogError::UnknownName(s.to_string());
        let argument = |prefix: &str| -> Option<u32> {
            name.strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        Ok(match name.as_str() {
            "franklin" => NamedGraph::Franklin,
            "heawood" => NamedGraph::Heawood,
            "desargues" => NamedGraph::Desargues,
            "k33" => NamedGraph::K33,
            "k44" => NamedGraph::K44,
            _ => {
                if let Some(n) = argument("cycle") {
                    NamedGraph::Cycle(n)
                } else if let Some(k) = argument("complete_bipartite") {
                    NamedGraph::CompleteBipartite(k)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// Looks up a graph by name; see [`NamedGraph`] for the accepted names.
pub fn named_graph(name: &str) -> Result<(u32, Vec<Edge>), CatalogError> {
    name.parse::<NamedGraph>()?.build()
}
