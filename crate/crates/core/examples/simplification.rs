//! Simplifies both Reeb graphs of a random field pair at a few thresholds
//! and checks that simplifying the complement directly agrees with
//! recomputing it from the simplified graphs.
//!
//! Usage: `cargo run --example simplification [seed]`

use reeb_complement::classify::classify_complement;
use reeb_complement::complement::{compute_complement, ComplementGraph};
use reeb_complement::geom::rational::{ratio, Approx};
use reeb_complement::mesh::{Field, VertexOrder};
use reeb_complement::oracle::random_field_pair;
use reeb_complement::reeb::compute_reeb_graph;
use reeb_complement::simplify::{
    importance, simplify_complement, simplify_graph, simplify_graph_steps, ImportanceMeasure, Side, Simplification,
    SimplificationMode,
};

type Summary = Vec<(usize, usize, String, Vec<(String, Option<&'static str>)>)>;

fn summary(cg: &ComplementGraph) -> Summary {
    cg.rectangles
        .iter()
        .map(|r| {
            let cells = cg.cells_of(r.e1, r.e2).map(|c| (c.face.area().to_string(), c.label.map(|l| l.as_str()))).collect();
            (r.e1, r.e2, r.reeb.area().to_string(), cells)
        })
        .collect()
}

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1004);
    let mesh = random_field_pair(seed, 16).expect("random mesh");
    let g1 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::First));
    let g2 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::Second));
    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).expect("classification");
    println!("seed {seed}: {} x {} arcs, {} cells", g1.arcs.len(), g2.arcs.len(), cg.cells.len());

    for g in [&g1, &g2] {
        println!("f{} arcs:", g.field.number());
        for &a in g.arcs.keys() {
            let (lo, hi) = g.interval(a);
            println!(
                "  arc {a:>3} [{:.4}, {:.4}]  persistence {:.4}  size {}",
                Approx(lo),
                Approx(hi),
                Approx(&importance(g, a, ImportanceMeasure::Persistence)),
                importance(g, a, ImportanceMeasure::Size)
            );
        }
    }

    for threshold in [ratio(1, 20), ratio(1, 5), ratio(1, 2)] {
        for mode in [SimplificationMode::Consider, SimplificationMode::Ignore] {
            let s = Simplification { measure: ImportanceMeasure::Persistence, threshold: threshold.clone(), mode };
            let (s1, steps1) = simplify_graph_steps(&g1, &s);
            let s2 = simplify_graph(&g2, &s);
            let direct = simplify_complement(&mesh, &cg, Side::Both, &s).expect("simplified complement");
            let mut via = compute_complement(&mesh, &s1, &s2);
            classify_complement(&mesh, &mut via).expect("classification");
            let agree = summary(&direct) == summary(&via);
            println!(
                "threshold {:<5} {:<8}: {} x {} arcs ({} cancellations on f1), {} rectangles, {} cells, commutes: {agree}",
                Approx(&threshold).to_string(),
                mode.as_str(),
                s1.arcs.len(),
                s2.arcs.len(),
                steps1.len(),
                direct.rectangles.len(),
                direct.cells.len()
            );
        }
    }
}
