//! The `circbook` command line: analyze circulants, build and check
//! dispersable book embeddings, run the exact solver, and draw the results.
//!
//! Exit codes: 0 dispersable (or success), 1 not dispersable, 2 usage or
//! input error, 3 solver budget exhausted.

use std::collections::BTreeSet;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use circulant_book::{
    bipartition, dispersable_bipartite_circulant, document, min_pages_for_order, named_graph, overbay_order,
    parallel_class_embedding, search_dispersable_order, verify_embedding, ysl_order, BookEmbedding,
    Circulant, CyclicOrder, Degree, Edge, EmbeddingError, MinPages, NamedGraph, OrderSearch, SolverBudget,
    VerificationReport,
};

pub mod render;

use render::{jumps_present, render_svg, RenderOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_DISPERSABLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INDETERMINATE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "circbook",
    version,
    about = "Dispersable book embeddings of circulant graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, bipartiteness and connectivity of a circulant.
    Analyze(AnalyzeArgs),
    /// Build a book embedding of a circulant.
    Embed(EmbedArgs),
    /// Check an embedding document.
    Verify(VerifyArgs),
    /// Exact minimum page count for an order, or a search over all orders.
    Solve(SolveArgs),
    /// List or print the named graphs.
    Catalog(CatalogArgs),
    /// Draw an embedding document as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

/// `ysl`, `overbay`, `natural`, or `file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    Ysl,
    Overbay,
    Natural,
    File(PathBuf),
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ysl" => Ok(OrderKind::Ysl),
            "overbay" => Ok(OrderKind::Overbay),
            "natural" => Ok(OrderKind::Natural),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(OrderKind::File(path.into())),
                _ => Err(format!(
                    "unknown order {s:?}; expected ysl, overbay, natural or file:<path>"
                )),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct CirculantArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: u32,
    /// Comma-separated jump-lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub jumps: Vec<u32>,
}

impl CirculantArgs {
    fn build(&self) -> Result<Circulant> {
        Ok(Circulant::new(self.n, &self.jumps)?)
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub graph: CirculantArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    /// Only draw edges of these jump-lengths.
    #[arg(long, value_delimiter = ',')]
    pub show_jumps: Option<Vec<u32>>,
    /// Spine radius in SVG user units.
    #[arg(long, default_value_t = 200.0)]
    pub radius: f64,
    /// Leave out vertex labels.
    #[arg(long)]
    pub no_labels: bool,
}

impl DrawArgs {
    fn options(&self) -> RenderOptions {
        RenderOptions {
            radius: self.radius,
            labels: !self.no_labels,
            jump_filter: self.show_jumps.as_ref().map(|j| j.iter().copied().collect()),
        }
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Search-tree node cap per coloring search.
    #[arg(long, default_value_t = SolverBudget::default().max_nodes)]
    pub max_nodes: u64,
    /// Cap on cyclic orders examined by --search-orders.
    #[arg(long, default_value_t = SolverBudget::default().max_orders)]
    pub max_orders: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SolverBudget {
        SolverBudget {
            max_nodes: self.max_nodes,
            max_orders: self.max_orders,
        }
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub graph: CirculantArgs,
    /// Vertex order: ysl, overbay, natural or file:<path>.
    #[arg(long, default_value = "ysl")]
    pub order: OrderKind,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// For non-YSL orders, assign pages with the exact solver instead of by
    /// parallel classes.
    #[arg(long)]
    pub solve: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub draw: DrawArgs,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Embedding JSON document.
    pub path: PathBuf,
    /// Check against C(n, jumps), n taken from the document.
    #[arg(long, value_delimiter = ',', conflicts_with = "graph")]
    pub jumps: Option<Vec<u32>>,
    /// Check against a named graph.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Named graph (see `catalog`).
    #[arg(long, conflicts_with_all = ["n", "jumps"])]
    pub graph: Option<String>,
    /// Number of vertices, with --jumps.
    #[arg(long, requires = "jumps")]
    pub n: Option<u32>,
    /// Comma-separated jump-lengths, with --n.
    #[arg(long, value_delimiter = ',', requires = "n")]
    pub jumps: Option<Vec<u32>>,
    /// Vertex order: ysl, overbay, natural or file:<path>.
    #[arg(long, default_value = "ysl")]
    pub order: OrderKind,
    /// Search all cyclic orders up to rotation and reflection.
    #[arg(long)]
    pub search_orders: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Write the witness embedding here when the graph is dispersable.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Print one graph instead of the listing.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Embedding JSON document.
    pub path: PathBuf,
    #[command(flatten)]
    pub draw: DrawArgs,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

/// Runs a parsed command. Errors are usage or input errors (exit code 2).
pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Embed(args) => embed(&args),
        Command::Verify(args) => verify(&args),
        Command::Solve(args) => solve(&args),
        Command::Catalog(args) => catalog(&args),
        Command::Render(args) => render(&args),
    }
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn verdict(text: &str, good: bool) -> String {
    if use_color() {
        let code = if good { 32 } else { 31 };
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn jump_list(jumps: &[u32]) -> String {
    jumps.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct ReducedReport {
    n: u32,
    jumps: Vec<u32>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph: String,
    n: u32,
    jumps: Vec<u32>,
    edges: usize,
    delta: u32,
    bipartite: bool,
    ell: Option<u32>,
    odd_cycle: Option<Vec<u32>>,
    r: u32,
    connected: bool,
    reduced: ReducedReport,
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome> {
    let c = args.graph.build()?;
    let cert = c.bipartiteness_certificate();
    let odd_cycle = match cert {
        Some(_) => None,
        None => Some(
            bipartition(&c.edges(), c.n())
                .expect_err("Heuberger's criterion and BFS agree")
                .0,
        ),
    };
    let d = c.decompose();
    let report = AnalyzeReport {
        graph: c.to_string(),
        n: c.n(),
        jumps: c.jumps().to_vec(),
        edges: c.edge_count(),
        delta: c.max_degree().value(),
        bipartite: cert.is_some(),
        ell: cert.map(|b| b.ell),
        odd_cycle,
        r: d.r,
        connected: d.r == 1,
        reduced: ReducedReport {
            n: d.reduced.n(),
            jumps: d.reduced.jumps().to_vec(),
        },
    };
    if args.format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut out = String::new();
    out += &format!("circulant: {}\n", report.graph);
    out += &format!("vertices: {}\n", report.n);
    out += &format!("edges: {}\n", report.edges);
    out += &format!("max degree: {}\n", report.delta);
    match (&report.ell, &report.odd_cycle) {
        (Some(ell), _) => out += &format!("bipartite: {} (ell = {ell})\n", verdict("yes", true)),
        (None, Some(cycle)) => {
            let walk = circulant_book::OddCycle(cycle.clone());
            out += &format!("bipartite: {} (odd cycle {walk})\n", verdict("no", false));
        }
        (None, None) => unreachable!(),
    }
    if report.connected {
        out += "decomposition: connected (r = 1)\n";
    } else {
        out += &format!("decomposition: r = {} copies of {}\n", d.r, d.reduced);
    }
    Ok(Outcome::ok(out))
}

/// Parses an order file: a JSON label array, an embedding document, or labels
/// separated by commas or whitespace.
fn read_order(path: &Path) -> Result<CyclicOrder> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let trimmed = text.trim();
    let labels: Vec<u32> = if trimmed.starts_with('{') {
        return Ok(document::from_json(trimmed)
            .with_context(|| format!("{}", path.display()))?
            .order);
    } else if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).with_context(|| format!("{}", path.display()))?
    } else {
        trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .with_context(|| format!("{}: bad label {t:?}", path.display()))
            })
            .collect::<Result<_>>()?
    };
    CyclicOrder::from_sequence(labels).with_context(|| format!("{}", path.display()))
}

fn fixed_order(kind: &OrderKind, n: u32) -> Result<CyclicOrder> {
    let order = match kind {
        OrderKind::Ysl => ysl_order(n)?,
        OrderKind::Overbay => overbay_order(n)?,
        OrderKind::Natural => CyclicOrder::natural(n),
        OrderKind::File(path) => read_order(path)?,
    };
    if order.len() != n {
        bail!("order has {} vertices, graph has {n}", order.len());
    }
    Ok(order)
}

fn emit(output: &Option<PathBuf>, content: String) -> Result<String> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(content),
    }
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    out += &format!(
        "dispersable: {}\n",
        verdict(
            &report.is_dispersable_layout.to_string(),
            report.is_dispersable_layout
        )
    );
    out += &format!("pages: {} (max degree {})\n", report.page_count, report.delta);
    out += &format!("violations: {}\n", report.violations.len());
    for v in &report.violations {
        out += &format!("  {v}\n");
    }
    out
}

fn embed(args: &EmbedArgs) -> Result<Outcome> {
    let c = args.graph.build()?;
    let edges = c.edges();
    let delta = c.max_degree();
    let emb = match &args.order {
        OrderKind::Ysl => dispersable_bipartite_circulant(&c).map_err(|e| match e {
            EmbeddingError::NonBipartite { .. } => {
                anyhow!("{e}; the YSL construction only applies to bipartite circulants")
            }
            other => other.into(),
        })?,
        kind => {
            let order = fixed_order(kind, c.n())?;
            if args.solve {
                match min_pages_for_order(&edges, &order, delta, args.budget.budget())? {
                    MinPages::Exact { witness, .. } => witness,
                    MinPages::Indeterminate { lower, upper } => {
                        return Ok(Outcome {
                            stdout: format!(
                                "indeterminate: solver budget exhausted, min pages in {lower}..={upper}\n"
                            ),
                            code: EXIT_INDETERMINATE,
                        });
                    }
                }
            } else {
                parallel_class_embedding(&order, &edges)?
            }
        }
    };
    let report = verify_embedding(&edges, delta, &emb);
    let code = if report.is_dispersable_layout {
        EXIT_OK
    } else {
        EXIT_NOT_DISPERSABLE
    };
    let content = match args.format {
        Format::Json => document::to_json(&emb),
        Format::Svg => {
            let options = args.draw.options();
            options.validate(&c.jumps().iter().copied().collect())?;
            render_svg(&emb, &options)
        }
        Format::Text => {
            let mut out = format!("circulant: {c}\norder: {}\n", emb.order);
            for page in &emb.pages {
                let jump = page.jump.map_or("-".to_string(), |s| s.to_string());
                let list: Vec<String> = page.edges.iter().map(Edge::to_string).collect();
                out += &format!("page {} (jump {jump}): {}\n", page.color, list.join(" "));
            }
            out + &report_text(&report)
        }
    };
    Ok(Outcome {
        stdout: emit(&args.output, content)?,
        code,
    })
}

fn load_document(path: &Path) -> Result<BookEmbedding> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    document::from_json(&text).with_context(|| format!("{}", path.display()))
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let emb = load_document(&args.path)?;
    let n = emb.n();
    let edges = if let Some(jumps) = &args.jumps {
        Circulant::new(n, jumps)?.edges()
    } else if let Some(name) = &args.graph {
        let (gn, edges) = named_graph(name)?;
        if gn != n {
            bail!("{name} has {gn} vertices, the document has {n}");
        }
        edges
    } else {
        let set: BTreeSet<Edge> = emb.pages.iter().flat_map(|p| p.edges.iter().copied()).collect();
        set.into_iter().collect()
    };
    let delta = Degree::of_edges(&edges, n);
    let report = verify_embedding(&edges, delta, &emb);
    let code = if report.is_dispersable_layout {
        EXIT_OK
    } else {
        EXIT_NOT_DISPERSABLE
    };
    let stdout = match args.format {
        Format::Json => to_json(&report),
        _ => report_text(&report),
    };
    Ok(Outcome { stdout, code })
}

#[derive(Serialize)]
struct SolveReport {
    graph: String,
    n: u32,
    edges: usize,
    delta: u32,
    order: Option<Vec<u32>>,
    min_pages: Option<u32>,
    lower: Option<u32>,
    upper: Option<u32>,
    orders_examined: Option<u64>,
    verdict: &'static str,
}

fn solve(args: &SolveArgs) -> Result<Outcome> {
    let (label, n, edges) = match (&args.graph, args.n, &args.jumps) {
        (Some(name), _, _) => {
            let graph: NamedGraph = name.parse()?;
            let (n, edges) = graph.build()?;
            (graph.to_string(), n, edges)
        }
        (None, Some(n), Some(jumps)) => {
            let c = Circulant::new(n, jumps)?;
            (c.to_string(), n, c.edges())
        }
        _ => bail!("give either --graph or --n with --jumps"),
    };
    let delta = Degree::of_edges(&edges, n);
    let budget = args.budget.budget();
    let mut report = SolveReport {
        graph: label,
        n,
        edges: edges.len(),
        delta: delta.value(),
        order: None,
        min_pages: None,
        lower: None,
        upper: None,
        orders_examined: None,
        verdict: "indeterminate",
    };
    let mut witness = None;

    if args.search_orders {
        match search_dispersable_order(&edges, n, delta, budget)? {
            OrderSearch::Found {
                order,
                embedding,
                examined,
            } => {
                report.order = Some(order.into_sequence());
                report.min_pages = Some(delta.value());
                report.orders_examined = Some(examined);
                report.verdict = "dispersable";
                witness = Some(embedding);
            }
            OrderSearch::NoneExists { examined } => {
                report.orders_examined = Some(examined);
                report.verdict = "not-dispersable";
            }
            OrderSearch::Indeterminate { examined } => report.orders_examined = Some(examined),
        }
    } else {
        let order = fixed_order(&args.order, n)?;
        report.order = Some(order.sequence().to_vec());
        match min_pages_for_order(&edges, &order, delta, budget)? {
            MinPages::Exact { pages, witness: w } => {
                report.min_pages = Some(pages);
                if pages == delta.value() {
                    report.verdict = "dispersable";
                    witness = Some(w);
                } else {
                    report.verdict = "not-dispersable";
                }
            }
            MinPages::Indeterminate { lower, upper } => {
                report.lower = Some(lower);
                report.upper = Some(upper);
            }
        }
    }

    if let (Some(path), Some(w)) = (&args.witness, &witness) {
        fs::write(path, document::to_json(w)).with_context(|| format!("writing {}", path.display()))?;
    }
    let code = match report.verdict {
        "dispersable" => EXIT_OK,
        "not-dispersable" => EXIT_NOT_DISPERSABLE,
        _ => EXIT_INDETERMINATE,
    };
    if args.format == Format::Json {
        return Ok(Outcome {
            stdout: to_json(&report),
            code,
        });
    }

    let mut out = format!(
        "graph: {} (n = {}, {} edges, max degree {})\n",
        report.graph, report.n, report.edges, report.delta
    );
    if let Some(order) = &report.order {
        let kind = if args.search_orders {
            "found"
        } else {
            order_name(&args.order)
        };
        out += &format!("order: {kind} [{}]\n", jump_list(order));
    }
    if let Some(examined) = report.orders_examined {
        out += &format!("orders examined: {examined}\n");
    }
    match (report.min_pages, report.lower, report.upper) {
        (Some(p), _, _) => out += &format!("min pages: {p}\n"),
        (None, Some(lo), Some(hi)) => out += &format!("min pages: between {lo} and {hi}\n"),
        _ => {}
    }
    out += &match report.verdict {
        "dispersable" => format!("verdict: {}\n", verdict("dispersable", true)),
        "not-dispersable" if args.search_orders => {
            format!("verdict: {}\n", verdict("not dispersable under any order", false))
        }
        "not-dispersable" => format!(
            "verdict: {} ({} > {})\n",
            verdict("not dispersable with this order", false),
            report.min_pages.unwrap(),
            report.delta
        ),
        _ => format!(
            "verdict: {}\n",
            verdict("indeterminate (budget exhausted)", false)
        ),
    };
    Ok(Outcome { stdout: out, code })
}

fn order_name(kind: &OrderKind) -> &'static str {
    match kind {
        OrderKind::Ysl => "ysl",
        OrderKind::Overbay => "overbay",
        OrderKind::Natural => "natural",
        OrderKind::File(_) => "file",
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    n: u32,
    edges: usize,
    delta: u32,
    construction: String,
}

#[derive(Serialize)]
struct CatalogGraph {
    name: String,
    n: u32,
    delta: u32,
    construction: String,
    edges: Vec<Edge>,
}

fn construction(graph: &NamedGraph) -> Result<String> {
    if let Some(spec) = graph.lcf() {
        return Ok(format!("LCF {spec}"));
    }
    Ok(graph
        .circulant()
        .expect("non-LCF graphs are circulants")?
        .to_string())
}

fn catalog(args: &CatalogArgs) -> Result<Outcome> {
    if let Some(name) = &args.graph {
        let graph: NamedGraph = name.parse()?;
        let (n, edges) = graph.build()?;
        let entry = CatalogGraph {
            name: graph.to_string(),
            n,
            delta: Degree::of_edges(&edges, n).value(),
            construction: construction(&graph)?,
            edges,
        };
        if args.format == Format::Json {
            return Ok(Outcome::ok(to_json(&entry)));
        }
        let list: Vec<String> = entry.edges.iter().map(Edge::to_string).collect();
        return Ok(Outcome::ok(format!(
            "{}: {}, n = {}, {} edges, max degree {}\n{}\n",
            entry.name,
            entry.construction,
            entry.n,
            entry.edges.len(),
            entry.delta,
            list.join(" ")
        )));
    }
    let entries = NamedGraph::LISTED
        .iter()
        .map(|g| {
            let (n, edges) = g.build()?;
            Ok(CatalogEntry {
                name: g.to_string(),
                n,
                edges: edges.len(),
                delta: Degree::of_edges(&edges, n).value(),
                construction: construction(g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if args.format == Format::Json {
        return Ok(Outcome::ok(to_json(&entries)));
    }
    let mut out = String::new();
    for e in &entries {
        out += &format!(
            "{:<10} n = {:<3} edges = {:<3} max degree = {}  {}\n",
            e.name, e.n, e.edges, e.delta, e.construction
        );
    }
    out += "also: cycle(n), complete_bipartite(k)\n";
    Ok(Outcome::ok(out))
}

fn render(args: &RenderArgs) -> Result<Outcome> {
    let emb = load_document(&args.path)?;
    let options = args.draw.options();
    options.validate(&jumps_present(&emb))?;
    Ok(Outcome::ok(emit(&args.output, render_svg(&emb, &options))?))
}
