//! Dispersable book embeddings of bipartite circulant graphs.
//!
//! A book embedding places the vertices on a circle (the spine) and draws
//! edges as chords, split into pages. It is dispersable when it uses exactly
//! `Δ` pages and every page is a crossing-free matching. Every bipartite
//! circulant has one: decompose it into connected copies with odd jumps and
//! lay each copy out in the YSL order, where every page is a family of
//! parallel chords of a single jump-length.
//!
//! ```
//! use circulant_book::{dispersable_bipartite_circulant, verify_embedding, Circulant};
//!
//! let c = Circulant::new(12, &[2, 6]).unwrap();
//! let emb = dispersable_bipartite_circulant(&c).unwrap();
//! let report = verify_embedding(&c.edges(), c.max_degree(), &emb);
//! assert!(report.is_dispersable_layout);
//! assert_eq!(report.page_count, 3);
//! ```

pub mod catalog;
pub mod circulant;
pub mod document;
pub mod embedding;
pub mod orders;
pub mod solver;

pub use catalog::{from_lcf, named_graph, CatalogError, LcfSpec, NamedGraph};
pub use circulant::{
    bfs_bipartite, bipartition, cn_distance, connected_components, mu, BipartitenessCertificate, Circulant,
    CirculantError, Decomposition, Degree, Edge, OddCycle, TwoColoring, Vertex,
};
pub use embedding::{
    chords_cross, dispersable_bipartite_circulant, page_jump_profile, parallel_class_embedding,
    parallel_families, union_embedding, verify_embedding, ysl_embedding, BookEmbedding, EmbeddingError, Page,
    VerificationReport, Violation, ViolationKind,
};
pub use orders::{canonical_rotation_reflections, overbay_order, ysl_order, CyclicOrder, OrderError};
pub use solver::{
    conflict_graph, is_dispersable_with_order, min_pages_for_order, search_dispersable_order, ConflictGraph,
    Dispersability, MinPages, OrderSearch, SolverBudget, SolverError,
};
