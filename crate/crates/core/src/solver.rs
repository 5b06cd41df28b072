//! Exact page-count solvers for small instances.
//!
//! For a fixed cyclic order, a `k`-page crossing-free matching layout is the
//! same thing as a proper `k`-coloring of the conflict graph, whose nodes are
//! the host edges and whose edges join host edges that share an endpoint or
//! cross. Colorings are found by DSATUR-ordered backtracking.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::{Degree, Edge};
use crate::embedding::{chords_cross, verify_embedding, BookEmbedding, Page};
use crate::orders::CyclicOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("edge {0} has an endpoint outside the order")]
    UnknownVertex(Edge),
    #[error("solver budget must be positive")]
    EmptyBudget,
}

/// Caps on the work a solver call may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBudget {
    /// Search-tree nodes per coloring search.
    pub max_nodes: u64,
    /// Cyclic orders examined by [`search_dispersable_order`].
    pub max_orders: u64,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_nodes: 50_000_000,
            max_orders: 1_000_000,
        }
    }
}

impl SolverBudget {
    fn check(&self) -> Result<(), SolverError> {
        if self.max_nodes == 0 || self.max_orders == 0 {
            Err(SolverError::EmptyBudget)
        } else {
            Ok(())
        }
    }
}

/// Incompatibility graph on the edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    nodes: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
}

impl ConflictGraph {
    /// A conflict-style graph from an explicit node count and adjacency
    /// pairs. Self-pairs and repeats are dropped.
    pub fn from_pairs(nodes: Vec<Edge>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); nodes.len()];
        for (i, j) in pairs {
            if i != j {
                neighbors[i].push(j);
                neighbors[j].push(i);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        ConflictGraph { nodes, neighbors }
    }

    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    /// All adjacent pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn is_proper_coloring(&self, colors: &[u32]) -> bool {
        colors.len() == self.nodes.len() && self.pairs().all(|(i, j)| colors[i] != colors[j])
    }
}

/// Nodes are `edges` in the given order; two nodes conflict when their edges
/// share an endpoint or their chords cross.
pub fn conflict_graph(order: &CyclicOrder, edges: &[Edge]) -> Result<ConflictGraph, SolverError> {
    let n = order.len();
    if let Some(e) = edges.iter().find(|e| e.u() == 0 || e.v() > n) {
        return Err(SolverError::UnknownVertex(*e));
    }
    let mut pairs = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        for (j, f) in edges.iter().enumerate().skip(i + 1) {
            if e.shares_endpoint(f) || chords_cross(order, e, f) {
                pairs.push((i, j));
            }
        }
    }
    Ok(ConflictGraph::from_pairs(edges.to_vec(), pairs))
}

/// Result of a bounded coloring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Colorable(Vec<u32>),
    NotColorable,
    BudgetExceeded,
}

/// Decides whether `graph` has a proper coloring with at most `k` colors.
/// Returns the coloring found first by DSATUR backtracking.
pub fn k_colorable(graph: &ConflictGraph, k: u32, max_nodes: u64) -> Colorability {
    let mut search = Dsatur::new(graph, k, max_nodes);
    match search.run() {
        Step::Found => Colorability::Colorable(search.colors.iter().map(|c| c.unwrap()).collect()),
        Step::Exhausted => Colorability::NotColorable,
        Step::OutOfBudget => Colorability::BudgetExceeded,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Dsatur<'a> {
    graph: &'a ConflictGraph,
    k: u32,
    colors: Vec<Option<u32>>,
    // neighbor_colors[v][c] = number of colored neighbors of v with color c
    neighbor_colors: Vec<Vec<u32>>,
    saturation: Vec<u32>,
    colored: usize,
    nodes_used: u64,
    max_nodes: u64,
}

impl<'a> Dsatur<'a> {
    fn new(graph: &'a ConflictGraph, k: u32, max_nodes: u64) -> Self {
        let m = graph.node_count();
        Dsatur {
            graph,
            k,
            colors: vec![None; m],
            neighbor_colors: vec![vec![0; k as usize]; m],
            saturation: vec![0; m],
            colored: 0,
            nodes_used: 0,
            max_nodes,
        }
    }

    // Highest saturation, then most uncolored neighbors, then lowest index.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_key = (0u32, 0usize);
        for v in 0..self.graph.node_count() {
            if self.colors[v].is_some() {
                continue;
            }
            let free_degree = self
                .graph
                .neighbors(v)
                .iter()
                .filter(|&&w| self.colors[w].is_none())
                .count();
            let key = (self.saturation[v], free_degree);
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = Some(c);
        self.colored += 1;
        for &w in self.graph.neighbors(v) {
            let count = &mut self.neighbor_colors[w][c as usize];
            if *count == 0 {
                self.saturation[w] += 1;
            }
            *count += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        self.colors[v] = None;
        self.colored -= 1;
        for &w in self.graph.neighbors(v) {
            let count = &mut self.neighbor_colors[w][c as usize];
            *count -= 1;
            if *count == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self) -> Step {
        if self.graph.node_count() == 0 {
            return Step::Found;
        }
        if self.k == 0 {
            return Step::Exhausted;
        }
        self.extend(0)
    }

    // `used` colors are 0..used; a fresh color is only ever `used` itself,
    // which removes color-permutation symmetry.
    fn extend(&mut self, used: u32) -> Step {
        if self.colored == self.graph.node_count() {
            return Step::Found;
        }
        let v = self.select();
        if self.saturation[v] >= self.k {
            return Step::Exhausted;
        }
        for c in 0..(used + 1).min(self.k) {
            if self.neighbor_colors[v][c as usize] > 0 {
                continue;
            }
            self.nodes_used += 1;
            if self.nodes_used > self.max_nodes {
                return Step::OutOfBudget;
            }
            self.assign(v, c);
            let step = self.extend(used.max(c + 1));
            if step != Step::Exhausted {
                return step;
            }
            self.unassign(v, c);
        }
        Step::Exhausted
    }
}

/// Greedy DSATUR coloring (no backtracking); an upper bound on the
/// chromatic number.
pub fn greedy_dsatur(graph: &ConflictGraph) -> Vec<u32> {
    let m = graph.node_count();
    let k = m.max(1) as u32;
    let mut search = Dsatur::new(graph, k, u64::MAX);
    while search.colored < m {
        let v = search.select();
        let c = (0..k)
            .find(|&c| search.neighbor_colors[v][c as usize] == 0)
            .expect("m colors always suffice");
        search.assign(v, c);
    }
    search.colors.into_iter().map(|c| c.unwrap()).collect()
}

/// Size of a clique found greedily: start from each node, repeatedly add the
/// lowest-index candidate adjacent to everything chosen so far.
pub fn greedy_clique_bound(graph: &ConflictGraph) -> u32 {
    let mut best = 0;
    for start in 0..graph.node_count() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = graph.neighbors(start).to_vec();
        candidates.sort_by_key(|&v| std::cmp::Reverse(graph.neighbors(v).len()));
        for v in candidates {
            if clique.iter().all(|&u| graph.is_adjacent(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len() as u32);
    }
    best
}

/// Exact chromatic number, or bounds when the budget runs out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticNumber {
    Exact { value: u32, coloring: Vec<u32> },
    Indeterminate { lower: u32, upper: u32 },
}

/// Chromatic number of a conflict graph: try `k = lower, lower + 1, ...`
/// below the greedy upper bound until a coloring exists.
pub fn chromatic_number(graph: &ConflictGraph, lower_hint: u32, max_nodes: u64) -> ChromaticNumber {
    let greedy = greedy_dsatur(graph);
    let upper = greedy.iter().map(|&c| c + 1).max().unwrap_or(0);
    let lower = greedy_clique_bound(graph).max(lower_hint).min(upper);
    for k in lower..upper {
        match k_colorable(graph, k, max_nodes) {
            Colorability::Colorable(coloring) => return ChromaticNumber::Exact { value: k, coloring },
            Colorability::NotColorable => {}
            Colorability::BudgetExceeded => return ChromaticNumber::Indeterminate { lower: k, upper },
        }
    }
    ChromaticNumber::Exact {
        value: upper,
        coloring: greedy,
    }
}

/// Exact minimum page count for a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinPages {
    /// `pages` is exact; `witness` realizes it.
    Exact { pages: u32, witness: BookEmbedding },
    /// The budget ran out; the minimum lies in `lower..=upper`.
    Indeterminate { lower: u32, upper: u32 },
}

fn witness_from_coloring(order: &CyclicOrder, edges: &[Edge], colors: &[u32], pages: u32) -> BookEmbedding {
    let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); pages as usize];
    for (e, &c) in edges.iter().zip(colors) {
        buckets[c as usize].push(*e);
    }
    let pages = buckets
        .into_iter()
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
    let witness = BookEmbedding {
        order: order.clone(),
        pages,
    };
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let report = verify_embedding(&sorted, Degree(witness.pages.len() as u32), &witness);
    assert!(
        report.is_dispersable_layout,
        "solver produced an invalid layout: {:?}",
        report.violations
    );
    witness
}

/// Minimum number of crossing-free matching pages for `edges` under `order`.
///
/// `delta` seeds the lower bound: the edges at a vertex of maximum degree
/// pairwise conflict.
pub fn min_pages_for_order(
    edges: &[Edge],
    order: &CyclicOrder,
    delta: Degree,
    budget: SolverBudget,
) -> Result<MinPages, SolverError> {
    budget.check()?;
    let graph = conflict_graph(order, edges)?;
    Ok(match chromatic_number(&graph, delta.value(), budget.max_nodes) {
        ChromaticNumber::Exact { value, coloring } => MinPages::Exact {
            pages: value,
            witness: witness_from_coloring(order, edges, &coloring, value),
        },
        ChromaticNumber::Indeterminate { lower, upper } => MinPages::Indeterminate { lower, upper },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dispersability {
    /// A verified `Δ`-page layout.
    Dispersable(BookEmbedding),
    NotDispersable,
    Indeterminate,
}

impl Dispersability {
    pub fn is_dispersable(&self) -> bool {
        matches!(self, Dispersability::Dispersable(_))
    }
}

/// Whether `edges` admit a `Δ`-page crossing-free matching layout under `order`.
pub fn is_dispersable_with_order(
    edges: &[Edge],
    order: &CyclicOrder,
    delta: Degree,
    budget: SolverBudget,
) -> Result<Dispersability, SolverError> {
    budget.check()?;
    let graph = conflict_graph(order, edges)?;
    Ok(decide(&graph, order, edges, delta, budget.max_nodes))
}

fn decide(
    graph: &ConflictGraph,
    order: &CyclicOrder,
    edges: &[Edge],
    delta: Degree,
    max_nodes: u64,
) -> Dispersability {
    match k_colorable(graph, delta.value(), max_nodes) {
        Colorability::Colorable(colors) => {
            Dispersability::Dispersable(witness_from_coloring(order, edges, &colors, delta.value()))
        }
        Colorability::NotColorable => Dispersability::NotDispersable,
        Colorability::BudgetExceeded => Dispersability::Indeterminate,
    }
}

/// Canonical representatives of the cyclic orders on `1..=n` up to rotation
/// and reflection, in lexicographic order: `1` first and
/// `seq[1] < seq[n-1]`. There are `(n-1)!/2` of them for `n >= 3`.
pub fn canonical_orders(n: u32) -> impl Iterator<Item = CyclicOrder> {
    let mut tail: Option<Vec<u32>> = Some((2..=n).collect());
    std::iter::from_fn(move || loop {
        let current = tail.take()?;
        let mut next = current.clone();
        if next_permutation(&mut next) {
            tail = Some(next);
        }
        if current.len() >= 2 && current[0] > current[current.len() - 1] {
            continue;
        }
        let mut seq = Vec::with_capacity(n as usize);
        if n > 0 {
            seq.push(1);
        }
        seq.extend(current);
        return Some(CyclicOrder::from_sequence(seq).expect("1 followed by a permutation of 2..=n"));
    })
}

fn next_permutation(xs: &mut [u32]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("xs[i+1] > xs[i]");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSearch {
    /// The lexicographically least canonical order admitting a `Δ`-page layout.
    Found {
        order: CyclicOrder,
        embedding: BookEmbedding,
        examined: u64,
    },
    /// Every canonical order was examined and none works.
    NoneExists { examined: u64 },
    /// Some orders were skipped or left undecided by the budget.
    Indeterminate { examined: u64 },
}

const SEARCH_CHUNK: usize = 512;

/// Exhaustive search over canonical cyclic orders for a dispersable layout.
///
/// Orders are decided in parallel chunk by chunk; the reported witness is
/// always the least successful order, whatever the scheduling.
pub fn search_dispersable_order(
    edges: &[Edge],
    n: u32,
    delta: Degree,
    budget: SolverBudget,
) -> Result<OrderSearch, SolverError> {
    budget.check()?;
    if let Some(e) = edges.iter().find(|e| e.u() == 0 || e.v() > n) {
        return Err(SolverError::UnknownVertex(*e));
    }
    let mut orders = canonical_orders(n);
    let mut examined = 0u64;
    let mut undecided = false;
    loop {
        let room = (budget.max_orders - examined).min(SEARCH_CHUNK as u64) as usize;
        let chunk: Vec<CyclicOrder> = orders.by_ref().take(room).collect();
        if chunk.is_empty() {
            break;
        }
        let before = examined;
        examined += chunk.len() as u64;
        let results: Vec<Dispersability> = chunk
            .par_iter()
            .map(|order| {
                let graph = conflict_graph(order, edges).expect("endpoints checked above");
                decide(&graph, order, edges, delta, budget.max_nodes)
            })
            .collect();
        undecided |= results.contains(&Dispersability::Indeterminate);
        let hit = chunk
            .into_iter()
            .zip(results)
            .enumerate()
            .find(|(_, (_, r))| r.is_dispersable());
        if let Some((i, (order, Dispersability::Dispersable(embedding)))) = hit {
            return Ok(OrderSearch::Found {
                order,
                embedding,
                examined: before + i as u64 + 1,
            });
        }
        if examined >= budget.max_orders {
            undecided |= orders.next().is_some();
            break;
        }
    }
    Ok(if undecided {
        OrderSearch::Indeterminate { examined }
    } else {
        OrderSearch::NoneExists { examined }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::Circulant;
    use crate::embedding::ysl_embedding;
    use crate::orders::ysl_order;

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn conflict_graph_of_four_cycle() {
        let c4 = Circulant::new(4, &[1]).unwrap();
        let edges = c4.edges();
        let g = conflict_graph(&CyclicOrder::natural(4), &edges).unwrap();
        // edges sorted: {1,2},{1,4},{2,3},{3,4}
        let pairs: Vec<(usize, usize)> = g.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(
            chromatic_number(&g, 0, 1000),
            ChromaticNumber::Exact {
                value: 2,
                coloring: greedy_dsatur(&g)
            }
        );
    }

    #[test]
    fn crossing_chords_conflict() {
        let g = conflict_graph(&CyclicOrder::natural(4), &[e(1, 3), e(2, 4)]).unwrap();
        assert_eq!(g.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(conflict_graph(&CyclicOrder::natural(4), &[e(1, 5)]).is_err());
    }

    #[test]
    fn k33_under_ysl_is_three_colorable() {
        let k33 = Circulant::new(6, &[1, 3]).unwrap();
        let order = ysl_order(6).unwrap();
        let g = conflict_graph(&order, &k33.edges()).unwrap();
        assert!(matches!(k_colorable(&g, 3, 1000), Colorability::Colorable(_)));
        assert_eq!(k_colorable(&g, 2, 1000), Colorability::NotColorable);
    }

    #[test]
    fn k44_min_pages() {
        let c = Circulant::new(8, &[1, 3]).unwrap();
        let result = min_pages_for_order(
            &c.edges(),
            &ysl_order(8).unwrap(),
            c.max_degree(),
            SolverBudget::default(),
        )
        .unwrap();
        assert!(matches!(result, MinPages::Exact { pages: 4, .. }));
    }

    #[test]
    fn witness_matches_ysl_up_to_renaming() {
        let k33 = Circulant::new(6, &[1, 3]).unwrap();
        let order = ysl_order(6).unwrap();
        let Dispersability::Dispersable(witness) =
            is_dispersable_with_order(&k33.edges(), &order, Degree(3), SolverBudget::default()).unwrap()
        else {
            panic!("K33 is dispersable under YSL");
        };
        let mut found: Vec<Vec<Edge>> = witness.pages.into_iter().map(|p| p.edges).collect();
        let mut expected: Vec<Vec<Edge>> = ysl_embedding(&k33)
            .unwrap()
            .pages
            .into_iter()
            .map(|p| p.edges)
            .collect();
        found.sort();
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c = Circulant::new(8, &[1, 3]).unwrap();
        let tiny = SolverBudget {
            max_nodes: 2,
            max_orders: 1,
        };
        let order = CyclicOrder::natural(8);
        assert_eq!(
            is_dispersable_with_order(&c.edges(), &order, c.max_degree(), tiny).unwrap(),
            Dispersability::Indeterminate
        );
        // C5 under the natural order: clique bound 2, three colors needed
        let c5 = Circulant::new(5, &[1]).unwrap();
        let one = SolverBudget {
            max_nodes: 1,
            max_orders: 1,
        };
        assert_eq!(
            min_pages_for_order(&c5.edges(), &CyclicOrder::natural(5), Degree(2), one).unwrap(),
            MinPages::Indeterminate { lower: 2, upper: 3 }
        );
        let zero = SolverBudget {
            max_nodes: 0,
            max_orders: 1,
        };
        assert_eq!(
            min_pages_for_order(&c.edges(), &order, c.max_degree(), zero),
            Err(SolverError::EmptyBudget)
        );
    }

    #[test]
    fn canonical_order_counts() {
        assert_eq!(canonical_orders(6).count(), 60);
        assert_eq!(canonical_orders(5).count(), 12);
        assert_eq!(canonical_orders(3).count(), 1);
        for n in 3..=7 {
            assert!(canonical_orders(n).all(|o| o.is_canonical()));
        }
        let orders: Vec<Vec<u32>> = canonical_orders(5).map(|o| o.into_sequence()).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(orders, sorted);
    }

    #[test]
    fn order_search_examples() {
        let c4 = Circulant::new(4, &[1]).unwrap();
        let found = search_dispersable_order(&c4.edges(), 4, Degree(2), SolverBudget::default()).unwrap();
        assert!(matches!(found, OrderSearch::Found { examined: 1, .. }));

        let triangle = Circulant::new(3, &[1]).unwrap();
        assert_eq!(
            search_dispersable_order(&triangle.edges(), 3, Degree(2), SolverBudget::default()).unwrap(),
            OrderSearch::NoneExists { examined: 1 }
        );

        let k33 = Circulant::new(6, &[1, 3]).unwrap();
        let result = search_dispersable_order(&k33.edges(), 6, Degree(3), SolverBudget::default()).unwrap();
        let OrderSearch::Found { order, .. } = result else {
            panic!("K33 has a dispersable order");
        };
        assert!(order.is_canonical());

        let limited = SolverBudget {
            max_nodes: 1000,
            max_orders: 1,
        };
        let k44 = Circulant::new(8, &[1, 3]).unwrap();
        // the first canonical order is the natural one, which works for K44
        assert!(matches!(
            search_dispersable_order(&k44.edges(), 8, Degree(4), limited).unwrap(),
            OrderSearch::Found { examined: 1, .. }
        ));
    }

    #[test]
    fn order_limit_without_a_hit_is_indeterminate() {
        // K5 = C(5,{1,2}): 10 edges but 4 matchings hold at most 8
        let k5 = Circulant::new(5, &[1, 2]).unwrap();
        let limited = SolverBudget {
            max_nodes: 1000,
            max_orders: 3,
        };
        assert_eq!(
            search_dispersable_order(&k5.edges(), 5, Degree(4), limited).unwrap(),
            OrderSearch::Indeterminate { examined: 3 }
        );
        assert_eq!(
            search_dispersable_order(&k5.edges(), 5, Degree(4), SolverBudget::default()).unwrap(),
            OrderSearch::NoneExists { examined: 12 }
        );
    }
}
