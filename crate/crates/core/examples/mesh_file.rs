//! Runs the whole pipeline on a mesh file: Reeb graphs, complement, labels,
//! JSON export and validation. Also checks that the mesh survives a write
//! and re-read unchanged.
//!
//! Usage: `cargo run --example mesh_file [path.rcm]`

use std::path::PathBuf;

use reeb_complement::export::{from_json, validate};
use reeb_complement::mesh::parse_mesh;
use reeb_complement::pipeline::{analyse, Input, RunConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/two_bowls.rcm"));
    let config = RunConfig::new(Input::Mesh(path.clone()));
    let out = match analyse(&config) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            std::process::exit(1);
        }
    };
    let mesh = &out.mesh;
    println!("{}: {} vertices, {} triangles", path.display(), mesh.vertices().len(), mesh.simplices().len());
    let cg = &out.complement;
    for g in &cg.graphs {
        println!("f{}: {} nodes, {} arcs", g.field.number(), g.nodes.len(), g.arcs.len());
    }
    for c in &cg.cells {
        println!("  cell {}  {}", c.id, c.label.map_or("-", |l| l.as_str()));
    }

    let summary = validate(&from_json(&out.json).expect("parse")).expect("valid document");
    println!(
        "JSON: {} bytes, {} rectangles, {} cells, {} adjacencies",
        out.json.len(),
        summary.rectangles,
        summary.cells,
        summary.adjacencies
    );
    let again = parse_mesh(&mesh.to_rcm()).expect("re-read");
    println!("mesh round trip exact: {}", &again == mesh);
}
