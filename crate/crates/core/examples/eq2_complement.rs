//! Reeb complement of the field pair `eq2`: a diamond against two basins
//! that merge at level 1. Writes one SVG per rectangle when given a directory.
//!
//! Usage: `cargo run --example eq2_complement [svg-dir]`

use reeb_complement::classify::classify_complement;
use reeb_complement::complement::{compute_complement, Junction};
use reeb_complement::export::svg_files;
use reeb_complement::geom::rational::{int, Approx};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, VertexOrder};
use reeb_complement::reeb::compute_reeb_graph;

fn main() {
    let mesh = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 64 }).expect("grid mesh");
    let g1 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::First));
    let g2 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::Second));
    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).expect("classification");

    for r in &cg.rectangles {
        println!(
            "rectangle {}x{}: x [{}, {}], y [{}, {}], Reeb area {}, {} cells",
            r.e1,
            r.e2,
            Approx(&r.bounds.x.0),
            Approx(&r.bounds.x.1),
            Approx(&r.bounds.y.0),
            Approx(&r.bounds.y.1),
            Approx(&r.reeb.area()),
            r.cell_count()
        );
        for c in cg.cells_of(r.e1, r.e2) {
            let (x, y) = c.sample.to_f64();
            println!("  cell {}  area {:<10.6}  sample ({x:.4}, {y:.4})  {}", c.id, Approx(&c.face.area()), c.label.map_or("-", |l| l.as_str()));
        }
    }
    println!("adjacency:");
    for &(a, b, j) in &cg.adjacency {
        let how = match j {
            Junction::Within => "within".to_string(),
            Junction::Node { field, node } => format!("node {node} of f{}", field.number()),
        };
        println!("  {} -- {}  ({how})", cg.cells[a].id, cg.cells[b].id);
    }

    if let Some(dir) = std::env::args().nth(1) {
        std::fs::create_dir_all(&dir).expect("svg directory");
        for (name, svg) in svg_files(&cg) {
            let path = std::path::Path::new(&dir).join(name);
            std::fs::write(&path, svg).expect("write svg");
            println!("wrote {}", path.display());
        }
    }
}
