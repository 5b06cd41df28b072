//! Book embeddings: a cyclic order plus a partition of the edges into pages.
//!
//! An embedding is *dispersable* when it has exactly `Δ` pages and every page
//! is a matching whose chords pairwise do not cross.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::{add_mod, bipartition, Circulant, CirculantError, Degree, Edge, OddCycle, Vertex};
use crate::orders::{ysl_sequence, CyclicOrder, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("{graph} is not bipartite (odd cycle {cycle})")]
    NonBipartite { graph: String, cycle: OddCycle },
    #[error("YSL construction needs an even n and only odd jumps, got {0}")]
    NotReduced(String),
    #[error("copies have different page counts: {0:?}")]
    MismatchedPageCounts(Vec<usize>),
    #[error("union of zero embeddings")]
    NoCopies,
    #[error("chords {0} and {1} cross")]
    Crossing(Edge, Edge),
    #[error("edge {0} has an endpoint outside the order")]
    UnknownVertex(Edge),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
}

/// One color class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub color: u32,
    /// The common jump-length of the page, when it was built from one.
    pub jump: Option<u32>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookEmbedding {
    pub order: CyclicOrder,
    pub pages: Vec<Page>,
}

impl BookEmbedding {
    pub fn n(&self) -> u32 {
        self.order.len()
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self.pages.iter().flat_map(|p| p.edges.iter().copied()).collect();
        edges.sort_unstable();
        edges
    }

    /// Applies a relabeling `old -> new` to the order and to every edge.
    /// The map must be a permutation of `1..=n`.
    pub fn relabeled(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Self, OrderError> {
        let seq = self.order.sequence().iter().map(|&v| map(v)).collect();
        let order = CyclicOrder::from_sequence(seq)?;
        let pages = self
            .pages
            .iter()
            .map(|page| {
                let mut edges: Vec<Edge> = page
                    .edges
                    .iter()
                    .map(|e| Edge::new(map(e.u()), map(e.v())).expect("permutation keeps endpoints distinct"))
                    .collect();
                edges.sort_unstable();
                Page {
                    color: page.color,
                    jump: page.jump,
                    edges,
                }
            })
            .collect();
        Ok(BookEmbedding { order, pages })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Two edges of one page meet at a vertex.
    SharedEndpoint,
    /// Two chords of one page interleave around the spine.
    Crossing,
    /// The page count differs from `Δ`.
    PageCount,
    /// An edge of the graph sits on no page.
    MissingEdge,
    /// A page holds an edge the graph does not have.
    UnknownEdge,
    /// An edge sits on more than one page, or twice on one page.
    DuplicateEdge,
    /// An edge endpoint is not a vertex of the order.
    UnknownVertex,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::SharedEndpoint => "shared-endpoint",
            ViolationKind::Crossing => "crossing",
            ViolationKind::PageCount => "page-count",
            ViolationKind::MissingEdge => "missing-edge",
            ViolationKind::UnknownEdge => "unknown-edge",
            ViolationKind::DuplicateEdge => "duplicate-edge",
            ViolationKind::UnknownVertex => "unknown-vertex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Color of the offending page, if the violation belongs to one.
    pub page: Option<u32>,
    /// The offending edge, or pair of edges.
    pub edges: Vec<Edge>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(page) = self.page {
            write!(f, " on page {page}")?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            write!(f, "{}{e}", if i == 0 { ": " } else { " " })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub is_dispersable_layout: bool,
    pub page_count: usize,
    pub delta: Degree,
    pub violations: Vec<Violation>,
}

/// Whether two chords with four distinct endpoints interleave around the spine.
pub fn chords_cross(order: &CyclicOrder, e: &Edge, f: &Edge) -> bool {
    debug_assert!(!e.shares_endpoint(f), "caller handles shared endpoints");
    let (a, b) = sorted_positions(order, e);
    let (c, d) = sorted_positions(order, f);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn sorted_positions(order: &CyclicOrder, e: &Edge) -> (u32, u32) {
    let p = order.position_of(e.u());
    let q = order.position_of(e.v());
    (p.min(q), p.max(q))
}

/// The YSL embedding of a circulant with even `n` and only odd jumps.
///
/// Every edge has exactly one odd endpoint `o`. For each jump `s < n/2` page
/// A holds the edges `{o, o + s}` and page B the edges `{o, o - s}`; the half
/// jump gets a single page. Pages are colored in order of `(jump, A, B)`.
pub fn ysl_embedding(c: &Circulant) -> Result<BookEmbedding, EmbeddingError> {
    let n = c.n();
    if n % 2 == 1 || c.jumps().iter().any(|s| s % 2 == 0) {
        return Err(EmbeddingError::NotReduced(c.to_string()));
    }
    let order = ysl_sequence(n / 2);
    let odd = || (1..=n).step_by(2);
    let mut pages = Vec::with_capacity(c.max_degree().value() as usize);
    for &s in c.jumps() {
        let directions: &[i64] = if 2 * s == n { &[1] } else { &[1, -1] };
        for &sign in directions {
            let mut edges: Vec<Edge> = odd()
                .map(|o| {
                    Edge::new(o, add_mod(n, o, sign * s as i64)).expect("odd jump links distinct vertices")
                })
                .collect();
            edges.sort_unstable();
            pages.push(Page {
                color: pages.len() as u32,
                jump: Some(s),
                edges,
            });
        }
    }
    Ok(BookEmbedding { order, pages })
}

/// Checks that `emb` partitions `edges` into `delta` crossing-free matchings.
///
/// Never fails: every problem becomes a [`Violation`], sorted by kind, page
/// and edges.
pub fn verify_embedding(edges: &[Edge], delta: Degree, emb: &BookEmbedding) -> VerificationReport {
    let mut violations = Vec::new();
    let page_count = emb.pages.len();
    if page_count != delta.value() as usize {
        violations.push(Violation {
            kind: ViolationKind::PageCount,
            page: None,
            edges: Vec::new(),
        });
    }

    // Partition check.
    let mut expected: HashMap<Edge, u32> = edges.iter().map(|&e| (e, 0)).collect();
    for page in &emb.pages {
        for e in &page.edges {
            match expected.get_mut(e) {
                Some(seen) => {
                    *seen += 1;
                    if *seen > 1 {
                        violations.push(Violation {
                            kind: ViolationKind::DuplicateEdge,
                            page: Some(page.color),
                            edges: vec![*e],
                        });
                    }
                }
                None => violations.push(Violation {
                    kind: ViolationKind::UnknownEdge,
                    page: Some(page.color),
                    edges: vec![*e],
                }),
            }
        }
    }
    violations.extend(
        expected
            .iter()
            .filter(|(_, &seen)| seen == 0)
            .map(|(&e, _)| Violation {
                kind: ViolationKind::MissingEdge,
                page: None,
                edges: vec![e],
            }),
    );

    let per_page: Vec<Vec<Violation>> = emb
        .pages
        .par_iter()
        .map(|page| page_violations(&emb.order, page))
        .collect();
    violations.extend(per_page.into_iter().flatten());
    violations.sort();

    VerificationReport {
        is_dispersable_layout: violations.is_empty(),
        page_count,
        delta,
        violations,
    }
}

fn page_violations(order: &CyclicOrder, page: &Page) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = order.len();
    let mut edges = Vec::with_capacity(page.edges.len());
    for &e in &page.edges {
        if e.u() == 0 || e.v() > n {
            out.push(violation(ViolationKind::UnknownVertex, page, vec![e]));
        } else {
            edges.push(e);
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut incident: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for x in e.endpoints() {
            incident.entry(x).or_default().push(i);
        }
    }
    let is_matching = incident.values().all(|list| list.len() == 1);
    if !is_matching {
        let mut pairs: Vec<(usize, usize)> = incident
            .values()
            .flat_map(|list| {
                list.iter()
                    .enumerate()
                    .flat_map(move |(a, &i)| list[a + 1..].iter().map(move |&j| (i, j)))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        out.extend(
            pairs
                .into_iter()
                .map(|(i, j)| violation(ViolationKind::SharedEndpoint, page, vec![edges[i], edges[j]])),
        );
    }

    if !is_matching || !is_outerplanar_matching(order, &edges) {
        for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                if !e.shares_endpoint(f) && chords_cross(order, e, f) {
                    out.push(violation(ViolationKind::Crossing, page, vec![*e, *f]));
                }
            }
        }
    }
    out
}

fn violation(kind: ViolationKind, page: &Page, edges: Vec<Edge>) -> Violation {
    Violation {
        kind,
        page: Some(page.color),
        edges,
    }
}

// Linear-time test for a matching: walking the spine, every closing endpoint
// must close the most recently opened chord.
fn is_outerplanar_matching(order: &CyclicOrder, edges: &[Edge]) -> bool {
    let mut at = vec![usize::MAX; order.len() as usize];
    for (i, e) in edges.iter().enumerate() {
        at[order.position_of(e.u()) as usize] = i;
        at[order.position_of(e.v()) as usize] = i;
    }
    let mut open = vec![false; edges.len()];
    let mut stack = Vec::new();
    for &i in at.iter().filter(|&&i| i != usize::MAX) {
        if open[i] {
            if stack.pop() != Some(i) {
                return false;
            }
        } else {
            open[i] = true;
            stack.push(i);
        }
    }
    true
}

/// Disjoint union: copy `t` is shifted past the vertices of copies `0..t`,
/// the orders are concatenated and page `i` of every copy merges into page `i`.
pub fn union_embedding(copies: &[BookEmbedding]) -> Result<BookEmbedding, EmbeddingError> {
    let first = copies.first().ok_or(EmbeddingError::NoCopies)?;
    let counts: Vec<usize> = copies.iter().map(|c| c.pages.len()).collect();
    if counts.iter().any(|&k| k != first.pages.len()) {
        return Err(EmbeddingError::MismatchedPageCounts(counts));
    }

    let mut seq = Vec::new();
    let mut pages: Vec<Page> = (0..first.pages.len())
        .map(|i| Page {
            color: i as u32,
            jump: first.pages[i].jump,
            edges: Vec::new(),
        })
        .collect();
    let mut offset = 0;
    for copy in copies {
        seq.extend(copy.order.sequence().iter().map(|&v| v + offset));
        for (merged, page) in pages.iter_mut().zip(&copy.pages) {
            if merged.jump != page.jump {
                merged.jump = None;
            }
            merged.edges.extend(
                page.edges.iter().map(|e| {
                    Edge::new(e.u() + offset, e.v() + offset).expect("shift keeps endpoints distinct")
                }),
            );
        }
        offset += copy.order.len();
    }
    for page in &mut pages {
        page.edges.sort_unstable();
    }
    Ok(BookEmbedding {
        order: CyclicOrder::from_sequence(seq)?,
        pages,
    })
}

/// Dispersable embedding of any bipartite circulant: decompose into
/// `r` copies of a connected circulant with odd jumps, embed one copy with
/// the YSL order, and take the union under the original labels.
pub fn dispersable_bipartite_circulant(c: &Circulant) -> Result<BookEmbedding, EmbeddingError> {
    if c.bipartiteness_certificate().is_none() {
        let cycle =
            bipartition(&c.edges(), c.n()).expect_err("Heuberger's criterion and BFS agree on bipartiteness");
        return Err(EmbeddingError::NonBipartite {
            graph: c.to_string(),
            cycle,
        });
    }
    let d = c.decompose();
    let base = ysl_embedding(&d.reduced)?;
    let m = d.reduced.n();
    let union = union_embedding(&vec![base; d.r as usize])?;
    Ok(union.relabeled(|v| d.original_label((v - 1) / m, (v - 1) % m + 1))?)
}

/// One page per parallel class: edges grouped by the sum of their endpoint
/// positions mod `n`. Parallel chords never cross and never share an
/// endpoint, so every page is a crossing-free matching; the page count is the
/// number of distinct classes.
pub fn parallel_class_embedding(
    order: &CyclicOrder,
    edges: &[Edge],
) -> Result<BookEmbedding, EmbeddingError> {
    let n = order.len();
    let mut classes: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for &e in edges {
        let (p, q) = match (order.try_position_of(e.u()), order.try_position_of(e.v())) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(EmbeddingError::UnknownVertex(e)),
        };
        classes.entry((p + q) % n).or_default().push(e);
    }
    let pages = classes
        .into_values()
        .enumerate()
        .map(|(i, mut edges)| {
            edges.sort_unstable();
            Page {
                color: i as u32,
                jump: None,
                edges,
            }
        })
        .collect();
    Ok(BookEmbedding {
        order: order.clone(),
        pages,
    })
}

/// Sum of the endpoint positions of `e`, mod `n`. Constant along a family of
/// parallel chords.
pub fn position_sum(order: &CyclicOrder, e: &Edge) -> u32 {
    (order.position_of(e.u()) + order.position_of(e.v())) % order.len()
}

/// Orders the chords of a non-crossing page along a line perpendicular to
/// them.
///
/// The axis of the family is anchored at `h = floor(c/2)`, where `c` is the
/// position sum of the page's first edge. A chord's offset is the smaller of
/// `(p - h) mod n` over its endpoint positions `p`; chords are listed by
/// decreasing offset, starting from the chord farthest from `h`.
pub fn parallel_families(order: &CyclicOrder, page: &Page) -> Result<Vec<Edge>, EmbeddingError> {
    let n = order.len();
    let mut edges = page.edges.clone();
    edges.sort_unstable();
    if let Some(e) = edges.iter().find(|e| e.u() == 0 || e.v() > n) {
        return Err(EmbeddingError::UnknownVertex(*e));
    }
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if !e.shares_endpoint(f) && chords_cross(order, e, f) {
                return Err(EmbeddingError::Crossing(*e, *f));
            }
        }
    }
    let Some(first) = edges.first() else {
        return Ok(edges);
    };
    let anchor = position_sum(order, first) / 2;
    let offset = |e: &Edge| {
        e.endpoints()
            .iter()
            .map(|&x| (order.position_of(x) + n - anchor) % n)
            .min()
            .unwrap()
    };
    edges.sort_by_key(|e| (std::cmp::Reverse(offset(e)), *e));
    Ok(edges)
}

/// Jump-lengths along a family of edges of `c`.
pub fn page_jump_profile(c: &Circulant, family: &[Edge]) -> Result<Vec<u32>, CirculantError> {
    family.iter().map(|e| c.jump_of_edge(e)).collect()
}
