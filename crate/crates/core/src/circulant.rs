//! Circulant graphs `C(n, S)` on the labels `1..=n`.
//!
//! Vertex `i` is adjacent to `i ± s (mod n)` for every jump-length `s` in `S`.
//! Labels are 1-based throughout the crate; spine positions (see
//! [`crate::orders`]) are 0-based.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vertex label in `1..=n`.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CirculantError {
    #[error("circulant needs at least 3 vertices, got n = {0}")]
    TooFewVertices(u32),
    #[error("jump set must not be empty")]
    EmptyJumps,
    #[error("jump {jump} is outside 1..={max} (floor(n/2) for n = {n})")]
    JumpOutOfRange { jump: u32, n: u32, max: u32 },
    #[error("jump {0} listed more than once")]
    DuplicateJump(u32),
    #[error("vertex label {label} is outside 1..={n}")]
    LabelOutOfRange { label: Vertex, n: u32 },
    #[error("{edge} is not an edge of {graph}")]
    NotAnEdge { edge: Edge, graph: String },
    #[error("an edge needs two distinct endpoints, got {0} twice")]
    Loop(Vertex),
}

/// An undirected edge stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, CirculantError> {
        if a == b {
            return Err(CirculantError::Loop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    /// The smaller endpoint.
    pub fn u(&self) -> Vertex {
        self.u
    }

    /// The larger endpoint.
    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.u, self.v]
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl TryFrom<[Vertex; 2]> for Edge {
    type Error = CirculantError;

    fn try_from([a, b]: [Vertex; 2]) -> Result<Self, Self::Error> {
        Edge::new(a, b)
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Maximum vertex degree `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub u32);

impl Degree {
    pub fn value(self) -> u32 {
        self.0
    }

    /// Observed maximum degree of an edge list over labels `1..=n`.
    pub fn of_edges(edges: &[Edge], n: u32) -> Degree {
        Degree(degrees(edges, n).into_iter().max().unwrap_or(0))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Per-vertex degrees, indexed by `label - 1`.
pub fn degrees(edges: &[Edge], n: u32) -> Vec<u32> {
    let mut deg = vec![0u32; n as usize];
    for e in edges {
        deg[(e.u - 1) as usize] += 1;
        deg[(e.v - 1) as usize] += 1;
    }
    deg
}

/// A validated circulant `C(n, S)` with `S` strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circulant {
    n: u32,
    jumps: Vec<u32>,
}

impl Circulant {
    /// Validates `n >= 3` and `S ⊆ 1..=floor(n/2)` without duplicates; the
    /// jump list is returned sorted.
    pub fn new(n: u32, jumps: &[u32]) -> Result<Self, CirculantError> {
        if n < 3 {
            return Err(CirculantError::TooFewVertices(n));
        }
        Self::checked(n, jumps)
    }

    // Also used for the K2 components `C(2, {1})` that come out of
    // decomposing `C(2m, {m})`.
    fn checked(n: u32, jumps: &[u32]) -> Result<Self, CirculantError> {
        if jumps.is_empty() {
            return Err(CirculantError::EmptyJumps);
        }
        let max = n / 2;
        if let Some(&jump) = jumps.iter().find(|&&s| s == 0 || s > max) {
            return Err(CirculantError::JumpOutOfRange { jump, n, max });
        }
        let mut sorted = jumps.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CirculantError::DuplicateJump(w[0]));
        }
        Ok(Circulant { n, jumps: sorted })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn jumps(&self) -> &[u32] {
        &self.jumps
    }

    pub fn has_half_jump(&self) -> bool {
        self.n.is_multiple_of(2) && self.jumps.last() == Some(&(self.n / 2))
    }

    /// Every edge exactly once, sorted by normal form. A jump `s < n/2`
    /// contributes `n` edges, the half jump `n/2` contributes `n/2`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut edges = Vec::with_capacity(self.edge_count());
        for &s in &self.jumps {
            let count = if 2 * s == n { n / 2 } else { n };
            for i in 1..=count {
                edges.push(
                    Edge {
                        u: i,
                        v: add_mod(n, i, s as i64),
                    }
                    .normalized(),
                );
            }
        }
        edges.sort_unstable();
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.jumps
            .iter()
            .map(|&s| if 2 * s == self.n { self.n / 2 } else { self.n } as usize)
            .sum()
    }

    pub fn max_degree(&self) -> Degree {
        let d = 2 * self.jumps.len() as u32;
        Degree(if self.has_half_jump() { d - 1 } else { d })
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        e.u >= 1 && e.v <= self.n && self.jumps.binary_search(&raw_distance(self.n, e.u, e.v)).is_ok()
    }

    /// The jump-length an edge spans; this is its `C_n`-distance.
    pub fn jump_of_edge(&self, e: &Edge) -> Result<u32, CirculantError> {
        if !self.contains_edge(e) {
            return Err(CirculantError::NotAnEdge {
                edge: *e,
                graph: self.to_string(),
            });
        }
        Ok(raw_distance(self.n, e.u, e.v))
    }

    /// Heuberger's criterion: bipartite iff some `ℓ` has `2^ℓ` dividing every
    /// jump, `2^(ℓ+1) | n`, and `2^(ℓ+1)` dividing no jump.
    pub fn bipartiteness_certificate(&self) -> Option<BipartitenessCertificate> {
        let log2_n = 31 - self.n.leading_zeros();
        (0..=log2_n)
            .map(|ell| BipartitenessCertificate { ell })
            .find(|cert| cert.holds_for(self))
    }

    /// Boesch and Tindell: `C(n, S)` is `r` disjoint copies of
    /// `C(n/r, S/r)` with `r = gcd(n, S)`.
    pub fn decompose(&self) -> Decomposition {
        let r = self.jumps.iter().fold(self.n, |g, &s| g.gcd(&s));
        let reduced_jumps: Vec<u32> = self.jumps.iter().map(|&s| s / r).collect();
        let reduced =
            Circulant::checked(self.n / r, &reduced_jumps).expect("dividing by the gcd keeps jumps in range");
        Decomposition { r, reduced }
    }

    pub fn is_connected(&self) -> bool {
        self.decompose().r == 1
    }
}

impl fmt::Display for Circulant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}, {{", self.n)?;
        for (i, s) in self.jumps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}})")
    }
}

impl Edge {
    fn normalized(self) -> Edge {
        Edge {
            u: self.u.min(self.v),
            v: self.u.max(self.v),
        }
    }
}

/// Witness exponent for Heuberger's bipartiteness criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartitenessCertificate {
    pub ell: u32,
}

impl BipartitenessCertificate {
    pub fn holds_for(&self, c: &Circulant) -> bool {
        let Some(low) = 1u64.checked_shl(self.ell) else {
            return false;
        };
        let high = low * 2;
        let n = c.n as u64;
        n.is_multiple_of(high)
            && c.jumps
                .iter()
                .all(|&s| (s as u64).is_multiple_of(low) && !(s as u64).is_multiple_of(high))
    }
}

/// `C = r · reduced`; `reduced` is connected.
///
/// `reduced` can be the two-vertex graph `C(2, {1})` when the input is the
/// perfect matching `C(2m, {m})`. It is the only way to obtain a circulant
/// with fewer than three vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub r: u32,
    pub reduced: Circulant,
}

impl Decomposition {
    /// Label in the original circulant of vertex `i` of copy `copy`
    /// (`copy` in `0..r`): copy `t` is the residue class `t + 1 mod r`.
    pub fn original_label(&self, copy: u32, i: Vertex) -> Vertex {
        copy + 1 + (i - 1) * self.r
    }
}

/// Graph distance between `u` and `w` along the `n`-cycle.
pub fn cn_distance(n: u32, u: Vertex, w: Vertex) -> Result<u32, CirculantError> {
    for label in [u, w] {
        if label == 0 || label > n {
            return Err(CirculantError::LabelOutOfRange { label, n });
        }
    }
    Ok(raw_distance(n, u, w))
}

fn raw_distance(n: u32, u: Vertex, w: Vertex) -> u32 {
    let d = u.abs_diff(w);
    d.min(n - d)
}

/// `label + delta` reduced into `1..=n`.
pub(crate) fn add_mod(n: u32, label: Vertex, delta: i64) -> Vertex {
    ((label as i64 - 1 + delta).rem_euclid(n as i64) + 1) as Vertex
}

/// Largest odd number not exceeding `k` (`k >= 1`).
pub fn mu(k: u32) -> u32 {
    assert!(k >= 1, "mu is defined for k >= 1");
    if k % 2 == 1 {
        k
    } else {
        k - 1
    }
}

/// The jump set `{1, 3, ..., mu(k)}` of the complete bipartite circulant on `2k` vertices.
pub fn odd_jumps_up_to(k: u32) -> Vec<u32> {
    (1..=mu(k)).step_by(2).collect()
}

/// A proper two-coloring; `side[label - 1]` is the color class of `label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    pub side: Vec<bool>,
}

impl TwoColoring {
    pub fn class(&self, value: bool) -> Vec<Vertex> {
        (1..=self.side.len() as u32)
            .filter(|&v| self.side[(v - 1) as usize] == value)
            .collect()
    }

    pub fn is_proper(&self, edges: &[Edge]) -> bool {
        edges
            .iter()
            .all(|e| self.side[(e.u - 1) as usize] != self.side[(e.v - 1) as usize])
    }
}

/// A closed walk of odd length, listed without repeating the start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle(pub Vec<Vertex>);

impl fmt::Display for OddCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{v}-")?;
        }
        match self.0.first() {
            Some(first) => write!(f, "{first}"),
            None => Ok(()),
        }
    }
}

fn adjacency(edges: &[Edge], n: u32) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n as usize];
    for e in edges {
        adj[(e.u - 1) as usize].push(e.v);
        adj[(e.v - 1) as usize].push(e.u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// BFS two-coloring, or an odd cycle when none exists.
pub fn bipartition(edges: &[Edge], n: u32) -> Result<TwoColoring, OddCycle> {
    let adj = adjacency(edges, n);
    let mut color: Vec<Option<bool>> = vec![None; n as usize];
    let mut parent: Vec<Vertex> = vec![0; n as usize];
    let mut depth: Vec<u32> = vec![0; n as usize];
    for root in 1..=n {
        if color[(root - 1) as usize].is_some() {
            continue;
        }
        color[(root - 1) as usize] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let cx = color[(x - 1) as usize].unwrap();
            for &y in &adj[(x - 1) as usize] {
                let yi = (y - 1) as usize;
                match color[yi] {
                    None => {
                        color[yi] = Some(!cx);
                        parent[yi] = x;
                        depth[yi] = depth[(x - 1) as usize] + 1;
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => {
                        return Err(odd_cycle(x, y, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(TwoColoring {
        side: color.into_iter().map(|c| c.unwrap()).collect(),
    })
}

// Tree paths from x and y up to their lowest common ancestor, closed by xy;
// rotated to start at the smallest label.
fn odd_cycle(x: Vertex, y: Vertex, parent: &[Vertex], depth: &[u32]) -> OddCycle {
    let depth_of = |v: Vertex| depth[(v - 1) as usize];
    let up = |v: Vertex| parent[(v - 1) as usize];
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth_of(a) > depth_of(b) {
        a = up(a);
        left.push(a);
    }
    while depth_of(b) > depth_of(a) {
        b = up(b);
        right.push(b);
    }
    while a != b {
        a = up(a);
        b = up(b);
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    let start = (0..left.len()).min_by_key(|&i| left[i]).unwrap_or(0);
    left.rotate_left(start);
    OddCycle(left)
}

/// BFS bipartiteness oracle: a two-coloring, or `None` on an odd cycle.
pub fn bfs_bipartite(edges: &[Edge], n: u32) -> Option<TwoColoring> {
    bipartition(edges, n).ok()
}

/// Connected components over `1..=n`, each sorted, ordered by smallest label.
pub fn connected_components(edges: &[Edge], n: u32) -> Vec<Vec<Vertex>> {
    let adj = adjacency(edges, n);
    let mut seen = vec![false; n as usize];
    let mut components = Vec::new();
    for root in 1..=n {
        if seen[(root - 1) as usize] {
            continue;
        }
        seen[(root - 1) as usize] = true;
        let mut component = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[(x - 1) as usize] {
                if !seen[(y - 1) as usize] {
                    seen[(y - 1) as usize] = true;
                    component.push(y);
                    queue.push_back(y);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}
