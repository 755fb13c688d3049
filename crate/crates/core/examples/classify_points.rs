//! Extracts the two contours behind an isovalue pair of `eq2` and reports
//! their inclusion relation, then checks that every cell keeps its label at
//! several interior points. Points whose contours reach the mesh boundary have
//! no inclusion relation and are counted separately.
//!
//! Usage: `cargo run --example classify_points`

use reeb_complement::classify::{classify_at, classify_complement, extract_contour, inclusion, InclusionLabel};
use reeb_complement::complement::{compute_complement, Forbidden};
use reeb_complement::geom::rational::{int, ratio};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, VertexOrder};
use reeb_complement::reeb::compute_reeb_graph;

fn main() {
    let mesh = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 32 }).expect("grid mesh");
    let g1 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::First));
    let g2 = compute_reeb_graph(&mesh, &VertexOrder::new(&mesh, Field::Second));

    let e1 = *g1.arcs.keys().next().expect("one arc");
    let (a, b) = (ratio(7, 10), ratio(13, 10));
    let c1 = extract_contour(&mesh, &g1, e1, &a).expect("contour of f1");
    println!("f1 = {a} on arc {e1}: {} chains, {} pieces, closed {}", c1.chains.len(), c1.pieces.len(), c1.closed);
    for &e2 in g2.arcs.keys() {
        let (lo, hi) = g2.interval(e2);
        if !(lo < &b && &b < hi) {
            continue;
        }
        let c2 = extract_contour(&mesh, &g2, e2, &b).expect("contour of f2");
        let label = inclusion(&c1, &c2).map(|l| l.as_str().to_string()).unwrap_or_else(|e| e.to_string());
        println!("  with f2 = {b} on arc {e2}: {} chains, label {label}", c2.chains.len());
    }

    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).expect("classification");
    let forbidden = Forbidden::new(&mesh, &g1, &g2);
    for cell in &cg.cells {
        let points = forbidden.samples(&cell.face, 10);
        let mut determined = Vec::new();
        let mut open = 0;
        for p in &points {
            match classify_at(&mesh, &g1, &g2, cell.id.e1, cell.id.e2, p).expect("sample in the complement") {
                InclusionLabel::UndeterminedBoundary => open += 1,
                l => determined.push(l),
            }
        }
        let constant = determined.iter().all(|l| Some(*l) == cell.label);
        println!(
            "cell {}: label {}, {} points with closed contours (constant {constant}), {open} reaching the boundary",
            cell.id,
            cell.label.map_or("-", |l| l.as_str()),
            determined.len()
        );
    }
}
