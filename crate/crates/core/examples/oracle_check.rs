//! Compares the computed complement of random field pairs with a
//! brute-force estimate: sample isovalue pairs on a grid, extract both level
//! sets directly from the triangle soup, and group samples whose contours
//! can be moved into each other without crossing.
//!
//! Usage: `cargo run --example oracle_check [count] [grid]`

use std::time::Instant;

use reeb_complement::classify::classify_complement;
use reeb_complement::complement::compute_complement;
use reeb_complement::mesh::{Field, VertexOrder};
use reeb_complement::oracle::{compare, empirical_cells, random_field_pair, SamplePlan};
use reeb_complement::reeb::{compute_reeb_graph_with, BoundaryMode};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let count = args.next().unwrap_or(5);
    let grid = args.next().unwrap_or(32);
    let plan = SamplePlan { resolution: grid, ..SamplePlan::default() };
    let mut failures = 0;
    for s in 0..count as u64 {
        let start = Instant::now();
        let cells = 10 + (7 * s as usize) % 11;
        let mesh = random_field_pair(1000 + s, cells).expect("random mesh");
        let g1 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::First), BoundaryMode::Collapse);
        let g2 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::Second), BoundaryMode::Collapse);
        let mut cg = compute_complement(&mesh, &g1, &g2);
        classify_complement(&mesh, &mut cg).expect("classification");
        let empirical = empirical_cells(&mesh, &g1, &g2, &plan, BoundaryMode::Collapse);
        let samples: usize = empirical.iter().map(|r| r.samples.len()).sum();
        let issues = compare(&cg, &empirical);
        println!(
            "seed {:>4}: {:>3} triangles, {:>2} rectangles, {:>3} cells, {:>6} samples, {} issues, {:.2}s",
            1000 + s,
            mesh.simplices().len(),
            cg.rectangles.len(),
            cg.cells.len(),
            samples,
            issues.len(),
            start.elapsed().as_secs_f64()
        );
        for i in &issues {
            println!("    {i}");
        }
        failures += usize::from(!issues.is_empty());
    }
    println!("{failures} of {count} meshes disagree");
}
