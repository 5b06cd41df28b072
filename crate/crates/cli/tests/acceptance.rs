//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p circulant-book-cli --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use circulant_book::circulant::odd_jumps_up_to;
use circulant_book::embedding::position_sum;
use circulant_book::solver::{canonical_orders, chromatic_number, ChromaticNumber};
use circulant_book::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_ysl(c: &Circulant) -> Check {
    let emb = ysl_embedding(c).map_err(|e| format!("{c}: {e}"))?;
    let report = verify_embedding(&c.edges(), c.max_degree(), &emb);
    ensure!(report.is_dispersable_layout, "{c}: {:?}", report.violations);
    ensure!(report.violations.is_empty(), "{c}: violations reported");
    ensure!(
        report.page_count as u32 == c.max_degree().value(),
        "{c}: {} pages",
        report.page_count
    );
    for page in &emb.pages {
        let jumps: BTreeSet<u32> = page.edges.iter().map(|e| c.jump_of_edge(e).unwrap()).collect();
        ensure!(
            jumps.len() == 1 && page.jump == jumps.first().copied(),
            "{c}: page {} mixes jumps {jumps:?}",
            page.color
        );
    }
    Ok(())
}

fn criterion_1() -> Check {
    for n in (4..=400).step_by(2) {
        check_ysl(&Circulant::new(n, &odd_jumps_up_to(n / 2)).unwrap())?;
    }
    let mut rng = rng(1);
    for _ in 0..200 {
        let n = 2 * rng.gen_range(2..=200u32);
        let odd = odd_jumps_up_to(n / 2);
        let size = rng.gen_range(1..=odd.len());
        let jumps: Vec<u32> = odd.choose_multiple(&mut rng, size).copied().collect();
        check_ysl(&Circulant::new(n, &jumps).unwrap())?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let d = cn_distance(16, 2, 13).map_err(|e| e.to_string())?;
    ensure!(d == 5, "cn_distance(16,2,13) = {d}");
    Ok(())
}

fn criterion_3() -> Check {
    let order = ysl_order(16).map_err(|e| e.to_string())?;
    let k = 8u32;
    let expected: Vec<u32> = (0..k).flat_map(|j| [2 * j + 1, 2 * k - 2 * j]).collect();
    ensure!(order.sequence() == expected.as_slice(), "sequence {order}");
    let window: Vec<u32> = (-4i64..=4)
        .map(|d| order.vertex_at((d.rem_euclid(16)) as u32))
        .collect();
    let pattern = [2 * k - 3, 4, 2 * k - 1, 2, 1, 2 * k, 3, 2 * k - 2, 5];
    ensure!(window == pattern, "around 1: {window:?}");
    Ok(())
}

fn criterion_4() -> Check {
    let mut checked = 0u64;
    for n in 3..=30u32 {
        let half = n / 2;
        for mask in 1u32..(1 << half) {
            let jumps: Vec<u32> = (1..=half).filter(|s| mask & (1 << (s - 1)) != 0).collect();
            let c = Circulant::new(n, &jumps).unwrap();
            let heuberger = c.bipartiteness_certificate().is_some();
            let bfs = bfs_bipartite(&c.edges(), n).is_some();
            ensure!(heuberger == bfs, "{c}: heuberger {heuberger}, bfs {bfs}");
            checked += 1;
        }
    }
    let expected: u64 = (3..=30u32).map(|n| (1u64 << (n / 2)) - 1).sum();
    ensure!(checked == expected, "{checked} circulants, expected {expected}");
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = rng(5);
    let mut bipartite = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=240u32);
        let all: Vec<u32> = (1..=n / 2).collect();
        let size = rng.gen_range(1..=all.len().min(4));
        let mut jumps: Vec<u32> = all.choose_multiple(&mut rng, size).copied().collect();
        // bias towards disconnected instances
        if rng.gen_bool(0.5) {
            let f = [2, 3, 4, 6][rng.gen_range(0..4)];
            if n % f == 0 && n / f >= 3 {
                jumps = jumps
                    .iter()
                    .map(|s| (s * f) % n)
                    .filter(|&s| s != 0 && s <= n / 2)
                    .collect();
                if jumps.is_empty() {
                    jumps.push(f);
                }
                jumps.sort();
                jumps.dedup();
            }
        }
        let c = Circulant::new(n, &jumps).unwrap();
        let r = jumps.iter().fold(n, |g, &s| num_integer::gcd(g, s));
        let d = c.decompose();
        ensure!(d.r == r, "{c}: r = {} but gcd = {r}", d.r);
        let edges = c.edges();
        let components = connected_components(&edges, n);
        ensure!(
            components.len() as u32 == r,
            "{c}: {} components",
            components.len()
        );
        let reduced = d.reduced.edges();
        for (t, comp) in components.iter().enumerate() {
            ensure!(
                comp.len() as u32 == n / r,
                "{c}: component {t} has {} vertices",
                comp.len()
            );
            let mut mapped: Vec<Edge> = edges
                .iter()
                .filter(|e| comp.contains(&e.u()))
                .map(|e| Edge::new((e.u() - 1) / r + 1, (e.v() - 1) / r + 1).unwrap())
                .collect();
            mapped.sort();
            ensure!(
                mapped.len() * r as usize == edges.len(),
                "{c}: component {t} edge count"
            );
            ensure!(
                mapped == reduced,
                "{c}: component {t} is not the reduced circulant"
            );
        }
        if c.bipartiteness_certificate().is_some() {
            bipartite += 1;
            let emb = dispersable_bipartite_circulant(&c).map_err(|e| format!("{c}: {e}"))?;
            let report = verify_embedding(&edges, c.max_degree(), &emb);
            ensure!(report.is_dispersable_layout, "{c}: {:?}", report.violations);
        }
    }
    ensure!(bipartite >= 20, "only {bipartite} bipartite instances");
    Ok(())
}

fn exact_pages(edges: &[Edge], order: &CyclicOrder, delta: Degree) -> Result<(u32, BookEmbedding), String> {
    match min_pages_for_order(edges, order, delta, SolverBudget::default()).map_err(|e| e.to_string())? {
        MinPages::Exact { pages, witness } => Ok((pages, witness)),
        MinPages::Indeterminate { lower, upper } => Err(format!("indeterminate in {lower}..={upper}")),
    }
}

fn criterion_6() -> Check {
    let c = Circulant::new(8, &[1, 3]).unwrap();
    let edges = c.edges();
    let overbay = overbay_order(8).map_err(|e| e.to_string())?;
    let emb = parallel_class_embedding(&overbay, &edges).map_err(|e| e.to_string())?;
    let report = verify_embedding(&edges, c.max_degree(), &emb);
    ensure!(
        report.is_dispersable_layout && report.page_count == 4,
        "overbay: {:?}",
        report.violations
    );
    let (pages, _) = exact_pages(&edges, &overbay, c.max_degree())?;
    ensure!(pages == 4, "overbay solver: {pages} pages");

    let full = emb
        .pages
        .iter()
        .find(|p| p.edges.len() == 4)
        .ok_or("no maximal family")?;
    let family = parallel_families(&overbay, full).map_err(|e| e.to_string())?;
    let profile = page_jump_profile(&c, &family).map_err(|e| e.to_string())?;
    ensure!(profile == [1, 3, 3, 1], "overbay profile {profile:?}");

    check_ysl(&c)?;
    let ysl = ysl_embedding(&c).unwrap();
    let (pages, _) = exact_pages(&edges, &ysl.order, c.max_degree())?;
    ensure!(pages == 4, "ysl solver: {pages} pages");
    for page in &ysl.pages {
        let family = parallel_families(&ysl.order, page).map_err(|e| e.to_string())?;
        let profile = page_jump_profile(&c, &family).map_err(|e| e.to_string())?;
        ensure!(
            profile.iter().all(|&s| s == profile[0]),
            "ysl profile {profile:?}"
        );
    }
    Ok(())
}

fn criterion_7() -> Check {
    for (name, want) in [("franklin", Some(3)), ("heawood", Some(3)), ("desargues", None)] {
        let (n, edges) = named_graph(name).map_err(|e| e.to_string())?;
        let order = ysl_order(n).map_err(|e| e.to_string())?;
        let (pages, witness) = exact_pages(&edges, &order, Degree(3))?;
        match want {
            Some(p) => {
                ensure!(pages == p, "{name}: {pages} pages");
                let report = verify_embedding(&edges, Degree(3), &witness);
                ensure!(
                    report.is_dispersable_layout,
                    "{name} witness: {:?}",
                    report.violations
                );
            }
            None => ensure!(pages >= 4, "{name}: {pages} pages"),
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for n in (4..=400).step_by(2) {
        let c = Circulant::new(n, &odd_jumps_up_to(n / 2)).unwrap();
        let emb = ysl_embedding(&c).unwrap();
        for page in &emb.pages {
            let sums: BTreeSet<u32> = page.edges.iter().map(|e| position_sum(&emb.order, e)).collect();
            ensure!(sums.len() == 1, "n = {n}, page {}: sums {sums:?}", page.color);
            let family = parallel_families(&emb.order, page).map_err(|e| e.to_string())?;
            let dist = |e: &Edge| cn_distance(n, e.u(), e.v()).unwrap();
            if family.len() >= 2 {
                ensure!(
                    dist(&family[0]) == dist(&family[1]),
                    "n = {n}: edges 1 and 2 differ"
                );
            }
            for w in family.windows(3) {
                ensure!(
                    dist(&w[0]) == dist(&w[2]),
                    "n = {n}: {} and {} differ",
                    w[0],
                    w[2]
                );
            }
        }
    }
    Ok(())
}

/// Chromatic number by dynamic programming over vertex subsets.
fn brute_force_chromatic(m: usize, pairs: &[(usize, usize)]) -> u32 {
    let mut adj = vec![0u32; m];
    for &(i, j) in pairs {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let full = (1u32 << m) - 1;
    let independent: Vec<bool> = (0..=full)
        .map(|s| (0..m).all(|v| s & (1 << v) == 0 || adj[v] & s == 0))
        .collect();
    let mut chi = vec![u32::MAX; full as usize + 1];
    chi[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            if independent[(sub | low) as usize] {
                chi[mask as usize] = chi[mask as usize].min(chi[(mask ^ (sub | low)) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    chi[full as usize]
}

fn criterion_9() -> Check {
    let mut graphs = 0;
    for n in 3..=8u32 {
        for mask in 1u32..(1 << (n / 2)) {
            let jumps: Vec<u32> = (1..=n / 2).filter(|s| mask & (1 << (s - 1)) != 0).collect();
            let c = Circulant::new(n, &jumps).unwrap();
            let edges = c.edges();
            if edges.len() > 12 {
                continue;
            }
            let mut orders = vec![CyclicOrder::natural(n)];
            if n % 2 == 0 {
                orders.push(ysl_order(n).unwrap());
            }
            for order in orders {
                let g = conflict_graph(&order, &edges).map_err(|e| e.to_string())?;
                let pairs: Vec<_> = g.pairs().collect();
                let expected = brute_force_chromatic(g.node_count(), &pairs);
                let ChromaticNumber::Exact { value, coloring } = chromatic_number(&g, 0, u64::MAX) else {
                    return Err(format!("{c}: unbounded search was indeterminate"));
                };
                ensure!(
                    value == expected,
                    "{c} under {order}: dsatur {value}, brute force {expected}"
                );
                ensure!(g.is_proper_coloring(&coloring), "{c}: improper coloring");
                graphs += 1;
            }
        }
    }
    ensure!(graphs > 20, "only {graphs} conflict graphs");

    let k33 = Circulant::new(6, &[1, 3]).unwrap();
    let edges = k33.edges();
    let orders: Vec<CyclicOrder> = canonical_orders(6).collect();
    ensure!(orders.len() == 60, "{} canonical orders", orders.len());
    let good: Vec<&CyclicOrder> = orders
        .iter()
        .filter(|o| {
            is_dispersable_with_order(&edges, o, Degree(3), SolverBudget::default())
                .map(|d| d.is_dispersable())
                .unwrap_or(false)
        })
        .collect();
    ensure!(!good.is_empty(), "no dispersable order for K33");
    let ysl = ysl_order(6).unwrap().canonical();
    ensure!(
        good.contains(&&ysl),
        "YSL order {ysl} not among dispersable orders"
    );
    match search_dispersable_order(&edges, 6, Degree(3), SolverBudget::default())
        .map_err(|e| e.to_string())?
    {
        OrderSearch::Found { order, .. } => ensure!(&order == good[0], "search found {order}"),
        other => return Err(format!("search: {other:?}")),
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_circbook"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn criterion_10() -> Check {
    let runs: [&[&str]; 6] = [
        &["embed", "--n", "16", "--jumps", "1,3,5,7"],
        &["embed", "--n", "24", "--jumps", "2,6,10", "--format", "svg"],
        &[
            "embed", "--n", "8", "--jumps", "1,3", "--order", "overbay", "--format", "svg",
        ],
        &[
            "embed", "--n", "10", "--jumps", "1,3,5", "--order", "natural", "--solve",
        ],
        &["solve", "--graph", "heawood", "--format", "json"],
        &["solve", "--graph", "k33", "--search-orders", "--format", "json"],
    ];
    for args in runs {
        let first = run_cli(args)?;
        ensure!(!first.0.is_empty(), "{args:?}: empty output");
        for _ in 0..3 {
            ensure!(run_cli(args)? == first, "{args:?}: output differs between runs");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "YSL embeddings are dispersable with single-jump pages",
            criterion_1,
        ),
        ("C_n-distance worked example", criterion_2),
        ("YSL order around vertex 1 for n = 16", criterion_3),
        ("Heuberger test agrees with BFS for n <= 30", criterion_4),
        ("decomposition into gcd-many isomorphic copies", criterion_5),
        ("C(8,{1,3}) under Overbay and YSL orders", criterion_6),
        ("Franklin and Heawood 3 pages, Desargues at least 4", criterion_7),
        ("YSL pages are parallel families", criterion_8),
        ("solver cross-validation and K33 order search", criterion_9),
        ("embed and solve output is deterministic", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
