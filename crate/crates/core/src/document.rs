//! The embedding JSON document.
//!
//! ```text
//! {
//!   "n": 4,
//!   "order": [1,4,3,2],
//!   "pages": [
//!     {"color": 0, "jump": 1, "edges": [[1,2],[3,4]]},
//!     {"color": 1, "jump": 1, "edges": [[1,4],[2,3]]}
//!   ]
//! }
//! ```
//!
//! Field order is fixed, edges are `[min, max]` and sorted, pages appear in
//! color order, so output is byte-stable.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::circulant::Edge;
use crate::embedding::{BookEmbedding, Page};
use crate::orders::CyclicOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: u32,
    order: Vec<u32>,
    pages: Vec<RawPage>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPage {
    color: u32,
    jump: Option<u32>,
    edges: Vec<[u32; 2]>,
}

/// Serializes an embedding; pages are emitted sorted by color.
pub fn to_json(emb: &BookEmbedding) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {},", emb.order.len());
    out.push_str("  \"order\": [");
    push_list(&mut out, emb.order.sequence().iter().map(|v| v.to_string()));
    out.push_str("],\n");
    out.push_str("  \"pages\": [");
    let mut pages: Vec<&Page> = emb.pages.iter().collect();
    pages.sort_by_key(|p| p.color);
    for (i, page) in pages.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let jump = page.jump.map_or("null".to_string(), |s| s.to_string());
        let _ = write!(
            out,
            "    {{\"color\": {}, \"jump\": {jump}, \"edges\": [",
            page.color
        );
        let mut edges = page.edges.clone();
        edges.sort_unstable();
        push_list(&mut out, edges.iter().map(|e| format!("[{},{}]", e.u(), e.v())));
        out.push_str("]}");
    }
    if !pages.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

fn push_list(out: &mut String, items: impl Iterator<Item = String>) {
    for (i, item) in items.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&item);
    }
}

/// Parses and validates a document. Edge endpoints may come in either order.
pub fn from_json(text: &str) -> Result<BookEmbedding, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = |path: String, message: String| DocumentError::Field { path, message };

    if raw.order.len() != raw.n as usize {
        return Err(field(
            "order".into(),
            format!("has {} labels but n = {}", raw.order.len(), raw.n),
        ));
    }
    let order = CyclicOrder::from_sequence(raw.order).map_err(|e| field("order".into(), e.to_string()))?;

    let mut pages = Vec::with_capacity(raw.pages.len());
    for (i, page) in raw.pages.into_iter().enumerate() {
        let mut edges = Vec::with_capacity(page.edges.len());
        for (j, [a, b]) in page.edges.into_iter().enumerate() {
            let path = format!("pages[{i}].edges[{j}]");
            for label in [a, b] {
                if label == 0 || label > raw.n {
                    return Err(field(path, format!("label {label} is outside 1..={}", raw.n)));
                }
            }
            edges.push(Edge::new(a, b).map_err(|e| field(path, e.to_string()))?);
        }
        edges.sort_unstable();
        pages.push(Page {
            color: page.color,
            jump: page.jump,
            edges,
        });
    }
    Ok(BookEmbedding { order, pages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::Circulant;
    use crate::embedding::ysl_embedding;

    #[test]
    fn four_cycle_document() {
        let emb = ysl_embedding(&Circulant::new(4, &[1]).unwrap()).unwrap();
        let text = to_json(&emb);
        assert_eq!(
            text,
            "{\n  \"n\": 4,\n  \"order\": [1,4,3,2],\n  \"pages\": [\n    \
             {\"color\": 0, \"jump\": 1, \"edges\": [[1,2],[3,4]]},\n    \
             {\"color\": 1, \"jump\": 1, \"edges\": [[1,4],[2,3]]}\n  ]\n}\n"
        );
        assert_eq!(from_json(&text).unwrap(), emb);
    }

    #[test]
    fn null_jump_and_empty_pages() {
        let emb = BookEmbedding {
            order: CyclicOrder::natural(3),
            pages: vec![],
        };
        let text = to_json(&emb);
        assert_eq!(
            text,
            "{\n  \"n\": 3,\n  \"order\": [1,2,3],\n  \"pages\": []\n}\n"
        );
        assert_eq!(from_json(&text).unwrap(), emb);

        let text = r#"{"n": 3, "order": [3,1,2], "pages": [{"color": 0, "jump": null, "edges": [[3,1]]}]}"#;
        let emb = from_json(text).unwrap();
        assert_eq!(emb.pages[0].edges, vec![Edge::new(1, 3).unwrap()]);
        assert_eq!(emb.pages[0].jump, None);
    }

    #[test]
    fn diagnostics() {
        let err = from_json("{\"n\": 4,\n \"order\": [1,2,3,4],\n \"pages\": [}").unwrap_err();
        assert!(matches!(err, DocumentError::Syntax { line: 3, .. }), "{err:?}");

        let err = from_json(r#"{"n": 4, "order": [1,2,3], "pages": []}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Field { ref path, .. } if path == "order"));

        let err = from_json(r#"{"n": 3, "order": [1,2,2], "pages": []}"#).unwrap_err();
        assert!(err.to_string().contains("order"));

        let err = from_json(
            r#"{"n": 3, "order": [1,2,3], "pages": [{"color": 0, "jump": null, "edges": [[1,2],[2,7]]}]}"#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "pages[0].edges[1]: label 7 is outside 1..=3");

        let err = from_json(
            r#"{"n": 3, "order": [1,2,3], "pages": [{"color": 0, "jump": null, "edges": [[2,2]]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("pages[0].edges[0]"));

        let err = from_json(r#"{"n": 3, "order": [1,2,3], "pages": [], "extra": 1}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Syntax { .. }));
    }
}
