//! Brute-force oracle on small known cases.

use reeb_complement::classify::classify_complement;
use reeb_complement::complement::compute_complement;
use reeb_complement::geom::rational::{int, ratio};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, SimplicialMesh, VertexOrder};
use reeb_complement::oracle::{compare, contours_at, empirical_cells, pair_relation, random_field_pair, Relation, SamplePlan};
use reeb_complement::reeb::{compute_reeb_graph_with, BoundaryMode};

fn diamond() -> SimplicialMesh {
    build_builtin(&BuiltinSpec { name: BuiltinName::DiamondPair, extent: int(3), resolution: 12 }).unwrap()
}

#[test]
fn relations_of_two_diamonds() {
    let mesh = diamond();
    let at = |field, l| {
        let mut cs = contours_at(&mesh, field, &l, BoundaryMode::Collapse).unwrap();
        assert_eq!(cs.len(), 1);
        cs.pop().unwrap()
    };
    let small = at(Field::First, ratio(7, 10));
    let large = at(Field::Second, ratio(17, 10));
    assert_eq!(pair_relation(&small, &large), Relation::FirstInsideSecond);
    assert_eq!(pair_relation(&large, &small), Relation::SecondInsideFirst);
    assert_eq!(pair_relation(&small, &at(Field::Second, ratio(7, 10))), Relation::Intersecting);
}

#[test]
fn vertex_levels_are_refused() {
    assert!(contours_at(&diamond(), Field::First, &int(1), BoundaryMode::Collapse).is_err());
}

#[test]
fn diamond_pair_has_two_clusters() {
    let mesh = diamond();
    let g1 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::First), BoundaryMode::Collapse);
    let g2 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::Second), BoundaryMode::Collapse);
    let emp = empirical_cells(&mesh, &g1, &g2, &SamplePlan { resolution: 16, ..SamplePlan::default() }, BoundaryMode::Collapse);
    assert_eq!(emp.len(), 1);
    assert_eq!(emp[0].clusters.len(), 2);
    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).unwrap();
    assert!(compare(&cg, &emp).is_empty());
}

#[test]
fn disjoint_supports_give_one_cluster() {
    let mesh = random_field_pair(1004, 16).unwrap();
    let g1 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::First), BoundaryMode::Collapse);
    let g2 = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, Field::Second), BoundaryMode::Collapse);
    let cg = compute_complement(&mesh, &g1, &g2);
    let empty: Vec<_> = cg.rectangles.iter().filter(|r| r.common == 0).collect();
    assert!(!empty.is_empty());
    let emp = empirical_cells(&mesh, &g1, &g2, &SamplePlan { resolution: 8, ..SamplePlan::default() }, BoundaryMode::Collapse);
    for r in empty {
        assert!(r.reeb.is_empty());
        assert_eq!(r.cell_count(), 1);
        let e = emp.iter().find(|e| (e.e1, e.e2) == (r.e1, r.e2)).unwrap();
        assert_eq!(e.clusters.len(), 1);
    }
}
