//! Contour extraction and inclusion labels for complement cells.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complement::{Cell, ComplementGraph, Forbidden};
use crate::geom::point::{ring_side, segment_intersection, RingSide, SegmentHit};
use crate::geom::rational::to_literal;
use crate::geom::{Bounds, PolygonSet, RPoint, Rational};
use crate::mesh::{Field, SimplicialMesh};
use crate::reeb::{simplex_span, ReebGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InclusionLabel {
    FirstInsideSecond,
    SecondInsideFirst,
    Disjoint,
    UndeterminedBoundary,
}

impl InclusionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            InclusionLabel::FirstInsideSecond => "FIRST_INSIDE_SECOND",
            InclusionLabel::SecondInsideFirst => "SECOND_INSIDE_FIRST",
            InclusionLabel::Disjoint => "DISJOINT",
            InclusionLabel::UndeterminedBoundary => "UNDETERMINED_BOUNDARY",
        }
    }

    /// The label seen with the two fields exchanged.
    pub fn swapped(self) -> Self {
        match self {
            InclusionLabel::FirstInsideSecond => InclusionLabel::SecondInsideFirst,
            InclusionLabel::SecondInsideFirst => InclusionLabel::FirstInsideSecond,
            other => other,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "FIRST_INSIDE_SECOND" => InclusionLabel::FirstInsideSecond,
            "SECOND_INSIDE_FIRST" => InclusionLabel::SecondInsideFirst,
            "DISJOINT" => InclusionLabel::Disjoint,
            "UNDETERMINED_BOUNDARY" => InclusionLabel::UndeterminedBoundary,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("isovalue {value} is outside the open interval of arc {arc}")]
    OutsideArc { arc: usize, value: String },
    #[error("isovalue {0} equals a vertex value")]
    NonGeneric(String),
    #[error("contour extraction is only implemented for triangle meshes (dim {0})")]
    Unsupported(usize),
    #[error("contours of cell {cell} intersect at isovalues ({x}, {y})")]
    Intersecting { cell: String, x: String, y: String },
    #[error("point lies on the contour")]
    OnContour,
}

/// One polyline of a contour with the mesh edges its vertices lie on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub points: Vec<RPoint>,
    pub edges: Vec<usize>,
    pub cycle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub field: Field,
    pub isovalue: Rational,
    pub arc: usize,
    pub chains: Vec<Chain>,
    pub closed: bool,
    /// Level segment inside each crossed simplex, sorted by simplex.
    pub pieces: Vec<(usize, RPoint, RPoint)>,
}

fn crossing_point(mesh: &SimplicialMesh, field: Field, e: usize, l: &Rational) -> RPoint {
    let (a, b) = mesh.topology().edges[e];
    let (fa, fb) = (mesh.value(field, a), mesh.value(field, b));
    let t = (l - fa) / (fb - fa);
    let (pa, pb) = (&mesh.vertices()[a].coords, &mesh.vertices()[b].coords);
    RPoint::new(&pa[0] + (&pb[0] - &pa[0]) * &t, &pa[1] + (&pb[1] - &pa[1]) * &t)
}

/// Level-set component of `graph`'s field on `arc` at a generic isovalue.
pub fn extract_contour(mesh: &SimplicialMesh, graph: &ReebGraph, arc: usize, isovalue: &Rational) -> Result<Contour, ClassifyError> {
    if mesh.dim() != 2 {
        return Err(ClassifyError::Unsupported(mesh.dim()));
    }
    let field = graph.field;
    let (lo, hi) = graph.interval(arc);
    if !(lo < isovalue && isovalue < hi) {
        return Err(ClassifyError::OutsideArc { arc, value: to_literal(isovalue) });
    }
    let topo = mesh.topology();
    let crosses = |e: usize| {
        let (a, b) = topo.edges[e];
        let (fa, fb) = (mesh.value(field, a), mesh.value(field, b));
        (fa < isovalue && isovalue < fb) || (fb < isovalue && isovalue < fa)
    };
    let mut pieces = Vec::new();
    let mut link: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut points: HashMap<usize, RPoint> = HashMap::new();
    for &s in &graph.arcs[&arc].simplices {
        let (smin, smax) = simplex_span(mesh, field, s);
        if !(&smin < isovalue && isovalue < &smax) {
            continue;
        }
        if mesh.simplices()[s].iter().any(|&v| mesh.value(field, v) == isovalue) {
            return Err(ClassifyError::NonGeneric(to_literal(isovalue)));
        }
        let ce: Vec<usize> = topo.simplex_edges[s].iter().copied().filter(|&e| crosses(e)).collect();
        debug_assert_eq!(ce.len(), 2);
        let p: Vec<RPoint> = ce
            .iter()
            .map(|&e| points.entry(e).or_insert_with(|| crossing_point(mesh, field, e, isovalue)).clone())
            .collect();
        link.entry(ce[0]).or_default().push(ce[1]);
        link.entry(ce[1]).or_default().push(ce[0]);
        pieces.push((s, p[0].clone(), p[1].clone()));
    }

    // Walk chains, open ones first from their degree-one ends.
    let mut starts: Vec<usize> = link.keys().copied().collect();
    starts.sort_unstable_by_key(|&e| (link[&e].len() != 1, e));
    let mut used: HashMap<usize, bool> = HashMap::new();
    let mut chains = Vec::new();
    for start in starts {
        if used.contains_key(&start) {
            continue;
        }
        let mut edges = vec![start];
        used.insert(start, true);
        let mut prev = usize::MAX;
        let mut cur = start;
        let cycle;
        loop {
            let next = link[&cur].iter().copied().find(|&n| n != prev && !used.contains_key(&n));
            match next {
                Some(n) => {
                    used.insert(n, true);
                    edges.push(n);
                    prev = cur;
                    cur = n;
                }
                None => {
                    cycle = link[&cur].len() == 2 && edges.len() > 2 && link[&cur].contains(&start);
                    break;
                }
            }
        }
        let pts = edges.iter().map(|e| points[e].clone()).collect();
        chains.push(Chain { points: pts, edges, cycle });
    }
    let closed = !chains.is_empty()
        && chains.iter().all(|c| c.cycle && c.edges.iter().all(|&e| !topo.boundary_edge[e]));
    Ok(Contour { field, isovalue: isovalue.clone(), arc, chains, closed, pieces })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

/// Even-odd test of a point against the cycles of a closed contour.
pub fn point_in_contour(contour: &Contour, p: &RPoint) -> Result<Side, ClassifyError> {
    let mut inside = false;
    for c in contour.chains.iter().filter(|c| c.cycle) {
        match ring_side(&c.points, p) {
            RingSide::Boundary => return Err(ClassifyError::OnContour),
            RingSide::Inside => inside = !inside,
            RingSide::Outside => {}
        }
    }
    Ok(if inside { Side::Inside } else { Side::Outside })
}

/// Whether the level segments of the two contours meet in a shared simplex.
pub fn contours_intersect(a: &Contour, b: &Contour) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut pa = a.pieces.clone();
    let mut pb = b.pieces.clone();
    pa.sort_by_key(|p| p.0);
    pb.sort_by_key(|p| p.0);
    while i < pa.len() && j < pb.len() {
        match pa[i].0.cmp(&pb[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if segment_intersection(&pa[i].1, &pa[i].2, &pb[j].1, &pb[j].2) != SegmentHit::None {
                    return true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    false
}

/// Inclusion relation of two disjoint closed contours.
pub fn inclusion(c1: &Contour, c2: &Contour) -> Result<InclusionLabel, ClassifyError> {
    if !c1.closed || !c2.closed {
        return Ok(InclusionLabel::UndeterminedBoundary);
    }
    let all_in = |a: &Contour, b: &Contour| -> Result<bool, ClassifyError> {
        let mut all = true;
        for c in &a.chains {
            all &= point_in_contour(b, &c.points[0])? == Side::Inside;
        }
        Ok(all)
    };
    let in12 = all_in(c1, c2)?;
    let in21 = all_in(c2, c1)?;
    Ok(match (in12, in21) {
        (true, false) => InclusionLabel::FirstInsideSecond,
        (false, true) => InclusionLabel::SecondInsideFirst,
        _ => InclusionLabel::Disjoint,
    })
}

fn cell_name(e1: usize, e2: usize) -> String {
    format!("{e1}-{e2}")
}

/// Label at one isovalue pair of the rectangle `(e1, e2)`, with no search.
pub fn classify_at(
    mesh: &SimplicialMesh,
    g1: &ReebGraph,
    g2: &ReebGraph,
    e1: usize,
    e2: usize,
    p: &RPoint,
) -> Result<InclusionLabel, ClassifyError> {
    let c1 = extract_contour(mesh, g1, e1, &p.x)?;
    let c2 = extract_contour(mesh, g2, e2, &p.y)?;
    if contours_intersect(&c1, &c2) {
        return Err(ClassifyError::Intersecting { cell: cell_name(e1, e2), x: to_literal(&p.x), y: to_literal(&p.y) });
    }
    inclusion(&c1, &c2)
}

/// Open value intervals of `arc` on which its contour avoids the mesh
/// boundary. A contour at `l` reaches the boundary exactly when some
/// boundary edge of a simplex on the arc spans `l`.
pub fn closed_intervals(mesh: &SimplicialMesh, graph: &ReebGraph, arc: usize) -> Vec<(Rational, Rational)> {
    let topo = mesh.topology();
    let (lo, hi) = graph.interval(arc);
    let mut spans: Vec<(Rational, Rational)> = graph.arcs[&arc]
        .simplices
        .iter()
        .flat_map(|&s| topo.simplex_edges[s].iter().copied())
        .filter(|&e| topo.boundary_edge[e])
        .map(|e| {
            let (a, b) = topo.edges[e];
            let (fa, fb) = (mesh.value(graph.field, a), mesh.value(graph.field, b));
            if fa <= fb {
                (fa.clone(), fb.clone())
            } else {
                (fb.clone(), fa.clone())
            }
        })
        .filter(|(a, b)| a < b && a < hi && b > lo)
        .collect();
    spans.sort();
    spans.dedup();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    for (a, b) in spans {
        if a > cur {
            out.push((cur.clone(), a.clone()));
        }
        if b > cur {
            cur = b;
        }
    }
    if &cur < hi {
        out.push((cur, hi.clone()));
    }
    out
}

fn inside_any(v: &Rational, ivs: &[(Rational, Rational)]) -> bool {
    ivs.iter().any(|(a, b)| a < v && v < b)
}

/// Labels a cell at its sample, or at an interior point of the part of
/// the cell where both contours are closed when the sample's are not.
pub fn classify_cell(
    mesh: &SimplicialMesh,
    g1: &ReebGraph,
    g2: &ReebGraph,
    cell: &Cell,
    forbidden: &Forbidden,
) -> Result<InclusionLabel, ClassifyError> {
    let (e1, e2) = (cell.id.e1, cell.id.e2);
    let cx = closed_intervals(mesh, g1, e1);
    let cy = closed_intervals(mesh, g2, e2);
    if inside_any(&cell.sample.x, &cx) && inside_any(&cell.sample.y, &cy) {
        return classify_at(mesh, g1, g2, e1, e2, &cell.sample);
    }
    let face = PolygonSet { faces: vec![cell.face.clone()], segments: vec![], points: vec![] };
    for (x0, x1) in &cx {
        for (y0, y1) in &cy {
            let b = Bounds::new((x0.clone(), x1.clone()), (y0.clone(), y1.clone()));
            let part = face.intersect(&PolygonSet::rectangle(&b));
            if let Some(p) = part.faces.iter().find_map(|f| forbidden.sample(f)) {
                return classify_at(mesh, g1, g2, e1, e2, &p);
            }
        }
    }
    Ok(InclusionLabel::UndeterminedBoundary)
}

/// Fills in every cell label. Dimension-3 meshes are left unlabelled.
pub fn classify_complement(mesh: &SimplicialMesh, cg: &mut ComplementGraph) -> Result<(), ClassifyError> {
    if mesh.dim() != 2 {
        return Ok(());
    }
    let forbidden = Forbidden::new(mesh, &cg.graphs[0], &cg.graphs[1]);
    let (g1, g2) = (&cg.graphs[0], &cg.graphs[1]);
    let labels: Vec<Result<InclusionLabel, ClassifyError>> =
        cg.cells.par_iter().map(|c| classify_cell(mesh, g1, g2, c, &forbidden)).collect();
    for (cell, label) in cg.cells.iter_mut().zip(labels) {
        cell.label = Some(label.map_err(|e| match e {
            ClassifyError::Intersecting { x, y, .. } => ClassifyError::Intersecting { cell: cell.id.to_string(), x, y },
            other => other,
        })?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complement::compute_complement;
    use crate::geom::rational::{int, ratio};
    use crate::mesh::{build_builtin, BuiltinName, BuiltinSpec, VertexOrder};
    use crate::reeb::{compute_reeb_graph, NodeKind};

    fn mesh(name: BuiltinName, n: usize) -> SimplicialMesh {
        build_builtin(&BuiltinSpec { name, extent: int(3), resolution: n }).unwrap()
    }

    fn graph(m: &SimplicialMesh, f: Field) -> ReebGraph {
        compute_reeb_graph(m, &VertexOrder::new(m, f))
    }

    #[test]
    fn diamond_contour_is_closed_rhombus() {
        let m = mesh(BuiltinName::DiamondPair, 12);
        let g = graph(&m, Field::First);
        let c = extract_contour(&m, &g, 0, &ratio(6, 5)).unwrap();
        assert!(c.closed);
        assert_eq!(c.chains.len(), 1);
        for p in &c.chains[0].points {
            assert_eq!(num_traits::Signed::abs(&p.x) + num_traits::Signed::abs(&p.y), ratio(6, 5));
        }
        assert_eq!(point_in_contour(&c, &RPoint::new(int(0), int(0))).unwrap(), Side::Inside);
        assert_eq!(point_in_contour(&c, &RPoint::new(int(2), int(0))).unwrap(), Side::Outside);
        assert!(matches!(extract_contour(&m, &g, 0, &int(7)), Err(ClassifyError::OutsideArc { .. })));
        assert!(matches!(extract_contour(&m, &g, 0, &int(1)), Err(ClassifyError::NonGeneric(_))));
        // Beyond the extent the level set reaches the boundary.
        let c = extract_contour(&m, &g, 0, &ratio(41, 10)).unwrap();
        assert!(!c.closed);
    }

    #[test]
    fn right_branch_contour_surrounds_right_minimum() {
        let m = mesh(BuiltinName::Eq2F2, 12);
        let g = graph(&m, Field::First);
        let right = g
            .arcs
            .values()
            .find(|a| {
                let n = g.node(a.lower);
                n.kind == NodeKind::Min && m.vertices()[n.vertex.unwrap()].coords[0] > int(0)
            })
            .unwrap()
            .id;
        let c = extract_contour(&m, &g, right, &ratio(3, 5)).unwrap();
        assert!(c.closed);
        assert_eq!(point_in_contour(&c, &RPoint::new(int(1), int(0))).unwrap(), Side::Inside);
        assert_eq!(point_in_contour(&c, &RPoint::new(int(-1), int(0))).unwrap(), Side::Outside);
    }

    #[test]
    fn diamond_pair_labels() {
        let m = mesh(BuiltinName::DiamondPair, 8);
        let (g1, g2) = (graph(&m, Field::First), graph(&m, Field::Second));
        let mut cg = compute_complement(&m, &g1, &g2);
        classify_complement(&m, &mut cg).unwrap();
        for c in &cg.cells {
            let expected = if c.sample.y > c.sample.x {
                InclusionLabel::FirstInsideSecond
            } else {
                InclusionLabel::SecondInsideFirst
            };
            assert_eq!(c.label, Some(expected));
        }
    }

    #[test]
    fn swapping_fields_swaps_labels() {
        let m = mesh(BuiltinName::Eq2, 10);
        let s = m.swap_fields();
        let mut a = compute_complement(&m, &graph(&m, Field::First), &graph(&m, Field::Second));
        let mut b = compute_complement(&s, &graph(&s, Field::First), &graph(&s, Field::Second));
        classify_complement(&m, &mut a).unwrap();
        classify_complement(&s, &mut b).unwrap();
        assert_eq!(a.cells.len(), b.cells.len());
        for c in &a.cells {
            let at = |cg: &ComplementGraph, e1, e2, p: &RPoint| {
                cg.cells_of(e1, e2).find(|d| d.face.contains(p)).map(|d| d.label)
            };
            let t = RPoint::new(c.sample.y.clone(), c.sample.x.clone());
            assert_eq!(at(&b, c.id.e2, c.id.e1, &t), Some(c.label.map(InclusionLabel::swapped)));
        }
    }
}
