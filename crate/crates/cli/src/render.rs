//! SVG rendering of circular book embeddings.
//!
//! Position 0 is drawn at the top and positions advance clockwise, so the
//! vertex at position `p` sits at angle `90° - 360° p / n`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use circulant_book::{cn_distance, BookEmbedding, Edge};

/// Fixed page palette; pages past the palette reuse it with a dash pattern.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];

const DASHES: [&str; 4] = ["", "6 3", "2 3", "8 3 2 3"];

const MARGIN: f64 = 32.0;
const VERTEX_RADIUS: f64 = 4.0;
const LABEL_GAP: f64 = 14.0;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub radius: f64,
    pub labels: bool,
    /// Only edges whose jump-length (C_n-distance) is listed are drawn.
    pub jump_filter: Option<BTreeSet<u32>>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            radius: 200.0,
            labels: true,
            jump_filter: None,
        }
    }
}

impl RenderOptions {
    /// Rejects a non-positive radius and filter entries outside `jumps`.
    pub fn validate(&self, jumps: &BTreeSet<u32>) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            bail!("radius must be positive, got {}", self.radius);
        }
        if let Some(filter) = &self.jump_filter {
            if let Some(s) = filter.iter().find(|s| !jumps.contains(s)) {
                bail!("jump {s} in --show-jumps is not a jump of the graph");
            }
        }
        Ok(())
    }
}

pub fn page_style(color: u32) -> (&'static str, &'static str) {
    let i = color as usize;
    (
        PALETTE[i % PALETTE.len()],
        DASHES[(i / PALETTE.len()) % DASHES.len()],
    )
}

fn coord(x: f64) -> String {
    let rounded = (x * 100.0).round() / 100.0;
    // avoid "-0.00"
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.2}")
}

fn jump_of(emb: &BookEmbedding, e: &Edge) -> u32 {
    cn_distance(emb.n(), e.u(), e.v()).expect("document labels are validated")
}

/// Jump-lengths present in an embedding, measured as C_n-distances.
pub fn jumps_present(emb: &BookEmbedding) -> BTreeSet<u32> {
    emb.pages
        .iter()
        .flat_map(|p| p.edges.iter().map(|e| jump_of(emb, e)))
        .collect()
}

pub fn render_svg(emb: &BookEmbedding, options: &RenderOptions) -> String {
    let n = emb.n();
    let r = options.radius;
    let extent = r + MARGIN + if options.labels { LABEL_GAP } else { 0.0 };
    let size = 2.0 * extent;
    let point = |position: u32, radius: f64| {
        let theta = PI / 2.0 - 2.0 * PI * position as f64 / n as f64;
        (extent + radius * theta.cos(), extent - radius * theta.sin())
    };

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        coord(size)
    );
    let _ = writeln!(
        svg,
        "  <circle class=\"spine\" cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"none\" stroke=\"#dddddd\"/>",
        coord(extent),
        coord(r)
    );

    let mut pages: Vec<_> = emb.pages.iter().collect();
    pages.sort_by_key(|p| p.color);
    for page in pages {
        let (stroke, dash) = page_style(page.color);
        let edges: Vec<&Edge> = page
            .edges
            .iter()
            .filter(|e| {
                options
                    .jump_filter
                    .as_ref()
                    .is_none_or(|f| f.contains(&jump_of(emb, e)))
            })
            .collect();
        if edges.is_empty() {
            continue;
        }
        let _ = write!(
            svg,
            "  <g class=\"page\" data-color=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.5\" fill=\"none\"",
            page.color
        );
        if let Some(s) = page.jump {
            let _ = write!(svg, " data-jump=\"{s}\"");
        }
        if !dash.is_empty() {
            let _ = write!(svg, " stroke-dasharray=\"{dash}\"");
        }
        svg.push_str(">\n");
        for e in edges {
            let (x1, y1) = point(emb.order.position_of(e.u()), r);
            let (x2, y2) = point(emb.order.position_of(e.v()), r);
            let _ = writeln!(
                svg,
                "    <path data-edge=\"{},{}\" d=\"M {} {} L {} {}\"/>",
                e.u(),
                e.v(),
                coord(x1),
                coord(y1),
                coord(x2),
                coord(y2)
            );
        }
        svg.push_str("  </g>\n");
    }

    svg.push_str("  <g class=\"vertices\" fill=\"#ffffff\" stroke=\"#000000\">\n");
    for (p, &v) in emb.order.sequence().iter().enumerate() {
        let (x, y) = point(p as u32, r);
        let _ = writeln!(
            svg,
            "    <circle data-vertex=\"{v}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            coord(x),
            coord(y),
            coord(VERTEX_RADIUS)
        );
    }
    svg.push_str("  </g>\n");

    if options.labels {
        svg.push_str(
            "  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"central\">\n",
        );
        for (p, &v) in emb.order.sequence().iter().enumerate() {
            let (x, y) = point(p as u32, r + LABEL_GAP);
            let _ = writeln!(svg, "    <text x=\"{}\" y=\"{}\">{v}</text>", coord(x), coord(y));
        }
        svg.push_str("  </g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
