//! Two identical fields: the Reeb image is the diagonal, which has no area
//! but still splits the rectangle into two cells with opposite nesting.

use reeb_complement::classify::classify_complement;
use reeb_complement::complement::compute_complement;
use reeb_complement::geom::rational::{int, Approx};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, VertexOrder};
use reeb_complement::reeb::compute_reeb_graph;

fn main() {
    let mesh = build_builtin(&BuiltinSpec { name: BuiltinName::DiamondPair, extent: int(3), resolution: 64 }).expect("grid mesh");
    let g1 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::First));
    let g2 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::Second));
    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).expect("classification");

    let r = &cg.rectangles[0];
    println!(
        "{} rectangle(s); Reeb image: {} faces, {} segments, area {}",
        cg.rectangles.len(),
        r.reeb.faces.len(),
        r.reeb.segments.len(),
        Approx(&r.reeb.area())
    );
    for c in &cg.cells {
        let side = if c.sample.y > c.sample.x { "above" } else { "below" };
        println!("cell {} ({side} the diagonal): {}", c.id, c.label.map_or("-", |l| l.as_str()));
    }
}
