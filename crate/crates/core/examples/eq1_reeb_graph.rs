//! Reeb graph of the two-basin field `eq1` on a grid over [-3, 3]².
//!
//! Usage: `cargo run --example eq1_reeb_graph [resolution]`

use reeb_complement::geom::rational::{int, Approx};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, VertexOrder};
use reeb_complement::reeb::{compute_reeb_graph, NodeKind};

fn main() {
    let resolution = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let mesh = build_builtin(&BuiltinSpec { name: BuiltinName::Eq1, extent: int(3), resolution }).expect("grid mesh");
    let graph = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::First));
    graph.check(&mesh).expect("consistent graph");

    println!("{} simplices, {} nodes, {} arcs", mesh.simplices().len(), graph.nodes.len(), graph.arcs.len());
    for n in graph.nodes.values() {
        println!("  node {:>2} {:<8} at {}", n.id, n.kind.as_str(), Approx(&n.value));
    }
    for a in graph.arcs.values() {
        let (lo, hi) = graph.interval(a.id);
        println!("  arc  {:>2} {} -> {}  [{}, {}]  {} simplices", a.id, a.lower, a.upper, Approx(lo), Approx(hi), a.simplices.len());
    }
    println!(
        "minima: {}, merges: {}",
        graph.count_kind(NodeKind::Min),
        graph.count_kind(NodeKind::Merge)
    );
    println!();
    print!("{}", graph.to_dot("eq1"));
}
