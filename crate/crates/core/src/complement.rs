//! Reeb complement per arc pair and the glued cell graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::classify::InclusionLabel;
use crate::geom::arrangement::Arrangement;
use crate::geom::point::{orient, BBox};
use crate::geom::polygon::{extract_with, Membership};
use crate::geom::{Avoid, Bounds, Face, Hull, HullCover, RPoint, Rational, Segment};
use crate::mesh::{Field, SimplicialMesh};
use crate::reeb::ReebGraph;

/// Identifies a cell by its arc pair and face index within the rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct CellId {
    pub e1: usize,
    pub e2: usize,
    pub index: usize,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.e1, self.e2, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub e1: usize,
    pub e2: usize,
    pub bounds: Bounds,
    pub reeb: crate::geom::PolygonSet,
    pub complement: crate::geom::PolygonSet,
    /// Number of full-simplices shared by the two arcs.
    pub common: usize,
}

impl Rectangle {
    pub fn cell_count(&self) -> usize {
        self.complement.faces.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub face: Face,
    pub sample: RPoint,
    pub label: Option<InclusionLabel>,
}

/// Where two adjacent cells meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Junction {
    /// Across a zero-width part of the projected Reeb image.
    Within,
    /// Across the line of a Reeb node of the given side.
    Node { field: Field, node: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementGraph {
    pub graphs: [ReebGraph; 2],
    /// Sorted by `(e1, e2)`.
    pub rectangles: Vec<Rectangle>,
    /// Sorted by id.
    pub cells: Vec<Cell>,
    /// Pairs of cell indices, smaller first.
    pub adjacency: BTreeSet<(usize, usize, Junction)>,
}

impl ComplementGraph {
    pub fn rectangle(&self, e1: usize, e2: usize) -> Option<&Rectangle> {
        self.rectangles.binary_search_by(|r| (r.e1, r.e2).cmp(&(e1, e2))).ok().map(|i| &self.rectangles[i])
    }

    pub fn cells_of(&self, e1: usize, e2: usize) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.id.e1 == e1 && c.id.e2 == e2)
    }

    pub fn cell_index(&self, id: CellId) -> Option<usize> {
        self.cells.binary_search_by(|c| c.id.cmp(&id)).ok()
    }

    pub fn neighbours(&self, cell: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .adjacency
            .iter()
            .filter_map(|&(a, b, _)| if a == cell { Some(b) } else if b == cell { Some(a) } else { None })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Sorted intersection of the two arcs' simplex sets.
pub fn common_simplices(g1: &ReebGraph, g2: &ReebGraph, e1: usize, e2: usize) -> Vec<usize> {
    intersect_sorted(&g1.arcs[&e1].simplices, &g2.arcs[&e2].simplices)
}

pub fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn bounds_of(g1: &ReebGraph, g2: &ReebGraph, e1: usize, e2: usize) -> Bounds {
    let (x0, x1) = g1.interval(e1);
    let (y0, y1) = g2.interval(e2);
    Bounds::new((x0.clone(), x1.clone()), (y0.clone(), y1.clone()))
}

/// Segments whose arrangement resolves the union of the simplex images.
/// In 2D, interior edges whose two triangles fold over opposite sides
/// of the edge image are skipped: their image lies inside the union.
fn image_segments(mesh: &SimplicialMesh, simplices: &[usize], out: &mut Vec<Segment>, points: &mut Vec<RPoint>) {
    let topo = mesh.topology();
    if mesh.dim() != 2 {
        for &s in simplices {
            let pts: Vec<RPoint> = mesh.simplices()[s].iter().map(|&v| mesh.image(v)).collect();
            match Hull::of(&pts) {
                Hull::Point(p) => points.push(p),
                h => out.extend(h.edges()),
            }
        }
        return;
    }
    let mut member = HashMap::with_capacity(simplices.len());
    for &s in simplices {
        member.insert(s, ());
    }
    let mut edges: Vec<usize> = simplices.iter().flat_map(|&s| topo.simplex_edges[s].iter().copied()).collect();
    edges.sort_unstable();
    edges.dedup();
    for e in edges {
        let (a, b) = topo.edges[e];
        let (pa, pb) = (mesh.image(a), mesh.image(b));
        if pa == pb {
            points.push(pa);
            continue;
        }
        let sides: Vec<std::cmp::Ordering> = topo.edge_simplices[e]
            .iter()
            .filter(|s| member.contains_key(*s))
            .map(|&s| {
                let c = mesh.simplices()[s].iter().copied().find(|&v| v != a && v != b).unwrap();
                orient(&pa, &pb, &mesh.image(c))
            })
            .collect();
        let interior = sides.len() == 2
            && sides[0] != std::cmp::Ordering::Equal
            && sides[1] != std::cmp::Ordering::Equal
            && sides[0] != sides[1];
        if !interior {
            out.push((pa, pb));
        }
    }
}

/// Image of the simplices (and of any extra closed sets) inside `bounds`,
/// together with its complement in `bounds`.
pub fn project_with(
    mesh: &SimplicialMesh,
    simplices: &[usize],
    extra: &[&crate::geom::PolygonSet],
    bounds: &Bounds,
) -> (crate::geom::PolygonSet, crate::geom::PolygonSet) {
    use crate::geom::PolygonSet;
    if bounds.is_degenerate() {
        return (PolygonSet::empty(), PolygonSet::empty());
    }
    let bbox = BBox::of(bounds.corners().iter());
    let hulls = simplices.iter().filter_map(|&s| {
        let pts: Vec<RPoint> = mesh.simplices()[s].iter().map(|&v| mesh.image(v)).collect();
        let hb = BBox::of(pts.iter());
        hb.overlaps(&bbox).then(|| Hull::of(&pts))
    });
    let cover = HullCover::new(hulls);

    let mut raw = Vec::new();
    let mut points = Vec::new();
    let near: Vec<usize> = simplices
        .iter()
        .copied()
        .filter(|&s| BBox::of(mesh.simplices()[s].iter().map(|&v| mesh.image(v)).collect::<Vec<_>>().iter()).overlaps(&bbox))
        .collect();
    image_segments(mesh, &near, &mut raw, &mut points);
    for set in extra {
        raw.extend(set.segments.iter().cloned());
        for f in &set.faces {
            raw.extend(f.boundary_segments().map(|(a, b)| (a.clone(), b.clone())));
        }
        points.extend(set.points.iter().cloned());
    }
    let mut segs: Vec<Segment> = raw
        .iter()
        .filter(|(a, b)| BBox::of([a, b]).overlaps(&bbox))
        .filter_map(|(a, b)| bounds.clip(a, b))
        .collect();
    segs.extend(bounds.edges());
    points.retain(|p| bounds.contains(p));
    let arr = Arrangement::build(segs, points);
    let (reeb_m, comp_m) = Membership::evaluate_pair(&arr, |p| {
        if !bounds.contains(p) {
            return (false, false);
        }
        let covered = cover.contains(p) || extra.iter().any(|s| s.contains(p));
        (covered, !covered)
    });
    (extract_with(&arr, &reeb_m), extract_with(&arr, &comp_m))
}

/// Projected Reeb image of a simplex set, clipped to `bounds`.
pub fn project_reeb(mesh: &SimplicialMesh, simplices: &[usize], bounds: &Bounds) -> crate::geom::PolygonSet {
    if bounds.is_degenerate() {
        // The clipped image of a zero-area rectangle is still meaningful.
        let cover = HullCover::new(
            simplices.iter().map(|&s| Hull::of(&mesh.simplices()[s].iter().map(|&v| mesh.image(v)).collect::<Vec<_>>())),
        );
        let mut segs = Vec::new();
        let mut points = Vec::new();
        image_segments(mesh, simplices, &mut segs, &mut points);
        let line = crate::geom::PolygonSet::rectangle(bounds);
        let mut all: Vec<Segment> = segs.iter().filter_map(|(a, b)| bounds.clip(a, b)).collect();
        all.extend(line.segments.iter().cloned());
        points.extend(line.points.iter().cloned());
        points.retain(|p| bounds.contains(p));
        let arr = Arrangement::build(all, points);
        return crate::geom::polygon::extract(&arr, |p| bounds.contains(p) && cover.contains(p));
    }
    project_with(mesh, simplices, &[], bounds).0
}

/// Values a representative coordinate must avoid: every vertex value of
/// the field and every node value of its graph.
#[derive(Debug, Clone, Default)]
pub struct Forbidden {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl Forbidden {
    pub fn new(mesh: &SimplicialMesh, g1: &ReebGraph, g2: &ReebGraph) -> Self {
        let collect = |field: Field, g: &ReebGraph| {
            let mut v: Vec<Rational> = (0..mesh.vertices().len()).map(|i| mesh.value(field, i).clone()).collect();
            v.extend(g.nodes.values().map(|n| n.value.clone()));
            v.sort();
            v.dedup();
            v
        };
        Self { x: collect(g1.field, g1), y: collect(g2.field, g2) }
    }

    pub fn sample(&self, face: &Face) -> Option<RPoint> {
        self.samples(face, 1).into_iter().next()
    }

    pub fn samples(&self, face: &Face, count: usize) -> Vec<RPoint> {
        let bx = |v: &Rational| self.x.binary_search(v).is_ok();
        let by = |v: &Rational| self.y.binary_search(v).is_ok();
        crate::geom::interior_points(face, &Avoid { x: Some(&bx), y: Some(&by) }, count)
    }
}

pub fn compute_rectangle(mesh: &SimplicialMesh, g1: &ReebGraph, g2: &ReebGraph, e1: usize, e2: usize) -> Rectangle {
    let bounds = bounds_of(g1, g2, e1, e2);
    let common = common_simplices(g1, g2, e1, e2);
    let (reeb, complement) = project_with(mesh, &common, &[], &bounds);
    Rectangle { e1, e2, bounds, reeb, complement, common: common.len() }
}

/// Enumerates the cells of a rectangle with representative samples.
pub fn rectangle_cells(rect: &Rectangle, forbidden: &Forbidden) -> Vec<Cell> {
    rect.complement
        .faces
        .iter()
        .enumerate()
        .map(|(index, face)| Cell {
            id: CellId { e1: rect.e1, e2: rect.e2, index },
            face: face.clone(),
            sample: forbidden.sample(face).expect("positive-area face has an interior point"),
            label: None,
        })
        .collect()
}

/// All rectangles of the product, computed independently, then glued.
pub fn compute_complement(mesh: &SimplicialMesh, g1: &ReebGraph, g2: &ReebGraph) -> ComplementGraph {
    let pairs: Vec<(usize, usize)> = g1.arcs.keys().flat_map(|&a| g2.arcs.keys().map(move |&b| (a, b))).collect();
    let rectangles: Vec<Rectangle> = pairs.par_iter().map(|&(a, b)| compute_rectangle(mesh, g1, g2, a, b)).collect();
    assemble(mesh, [g1.clone(), g2.clone()], rectangles)
}

/// Builds cells and adjacency from finished rectangles.
pub fn assemble(mesh: &SimplicialMesh, graphs: [ReebGraph; 2], mut rectangles: Vec<Rectangle>) -> ComplementGraph {
    rectangles.sort_by_key(|r| (r.e1, r.e2));
    let forbidden = Forbidden::new(mesh, &graphs[0], &graphs[1]);
    let per_rect: Vec<Vec<Cell>> = rectangles.par_iter().map(|r| rectangle_cells(r, &forbidden)).collect();
    let cells: Vec<Cell> = per_rect.into_iter().flatten().collect();
    let mut cg = ComplementGraph { graphs, rectangles, cells, adjacency: BTreeSet::new() };
    cg.adjacency = glue(&cg);
    cg
}

fn seg_key(a: &RPoint, b: &RPoint) -> (RPoint, RPoint) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Intervals of a face's boundary on the axis line `coord = value`.
fn on_line(face: &Face, vertical: bool, value: &Rational) -> Vec<(Rational, Rational)> {
    face.boundary_segments()
        .filter_map(|(a, b)| {
            let (ca, cb, ta, tb) = if vertical { (&a.x, &b.x, &a.y, &b.y) } else { (&a.y, &b.y, &a.x, &b.x) };
            (ca == value && cb == value && ta != tb).then(|| if ta < tb { (ta.clone(), tb.clone()) } else { (tb.clone(), ta.clone()) })
        })
        .collect()
}

fn glue(cg: &ComplementGraph) -> BTreeSet<(usize, usize, Junction)> {
    let mut adj = BTreeSet::new();
    let mut by_rect: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, c) in cg.cells.iter().enumerate() {
        by_rect.entry((c.id.e1, c.id.e2)).or_default().push(i);
    }

    // Within a rectangle: faces sharing a boundary edge.
    for cells in by_rect.values() {
        let mut owner: HashMap<(RPoint, RPoint), usize> = HashMap::new();
        for &i in cells {
            for (a, b) in cg.cells[i].face.boundary_segments() {
                if let Some(&j) = owner.get(&seg_key(a, b)) {
                    if j != i {
                        adj.insert((j.min(i), j.max(i), Junction::Within));
                    }
                } else {
                    owner.insert(seg_key(a, b), i);
                }
            }
        }
    }

    // Across node lines.
    for (side, field) in [(0usize, Field::First), (1, Field::Second)] {
        let g = &cg.graphs[side];
        let others: Vec<usize> = cg.graphs[1 - side].arcs.keys().copied().collect();
        for node in g.nodes.values() {
            let incident = g.incident_arcs(node.id);
            for (ia, &a) in incident.iter().enumerate() {
                for &b in &incident[ia + 1..] {
                    for &o in &others {
                        let (ka, kb) = if side == 0 { ((a, o), (b, o)) } else { ((o, a), (o, b)) };
                        let (Some(ra), Some(rb)) = (cg.rectangle(ka.0, ka.1), cg.rectangle(kb.0, kb.1)) else {
                            continue;
                        };
                        let (Some(ca), Some(cb)) = (by_rect.get(&ka), by_rect.get(&kb)) else {
                            continue;
                        };
                        for &i in ca {
                            let ia_iv = on_line(&cg.cells[i].face, side == 0, &node.value);
                            if ia_iv.is_empty() {
                                continue;
                            }
                            for &j in cb {
                                let jb_iv = on_line(&cg.cells[j].face, side == 0, &node.value);
                                let touching = ia_iv.iter().any(|(l0, h0)| {
                                    jb_iv.iter().any(|(l1, h1)| {
                                        let lo = l0.max(l1);
                                        let hi = h0.min(h1);
                                        if lo >= hi {
                                            return false;
                                        }
                                        let mid = (lo + hi) / Rational::from_integer(2.into());
                                        let p = if side == 0 {
                                            RPoint::new(node.value.clone(), mid)
                                        } else {
                                            RPoint::new(mid, node.value.clone())
                                        };
                                        !ra.reeb.contains(&p) && !rb.reeb.contains(&p)
                                    })
                                });
                                if touching {
                                    adj.insert((i.min(j), i.max(j), Junction::Node { field, node: node.id }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::int;
    use crate::mesh::{build_builtin, BuiltinName, BuiltinSpec, VertexOrder};
    use crate::reeb::compute_reeb_graph;

    fn graphs(mesh: &SimplicialMesh) -> (ReebGraph, ReebGraph) {
        (
            compute_reeb_graph(mesh, &VertexOrder::new(mesh, Field::First)),
            compute_reeb_graph(mesh, &VertexOrder::new(mesh, Field::Second)),
        )
    }

    fn check_area(r: &Rectangle) {
        assert_eq!(r.bounds.area(), r.reeb.area() + r.complement.area(), "rectangle {}x{}", r.e1, r.e2);
    }

    #[test]
    fn common_is_intersection() {
        assert_eq!(intersect_sorted(&[1, 2, 3], &[2, 3, 4]), vec![2, 3]);
        assert!(intersect_sorted(&[1, 5], &[2, 3]).is_empty());
    }

    #[test]
    fn single_triangle_projection() {
        let mesh = crate::mesh::parse_mesh("rcm 2 3 1\n0 0 0 0\n1 0 1 0\n0 1 0 1\n0 1 2\n").unwrap();
        let b = Bounds::new((int(0), int(1)), (int(0), int(1)));
        let r = project_reeb(&mesh, &[0], &b);
        assert_eq!(r.faces.len(), 1);
        assert_eq!(r.area(), crate::geom::rational::ratio(1, 2));
        let (_, comp) = project_with(&mesh, &[], &[], &b);
        assert_eq!(comp.faces.len(), 1);
        assert_eq!(comp.area(), int(1));
    }

    #[test]
    fn diamond_pair_has_two_cells() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::DiamondPair, extent: int(3), resolution: 8 }).unwrap();
        let (g1, g2) = graphs(&m);
        assert_eq!(common_simplices(&g1, &g2, 0, 0).len(), m.simplices().len());
        let cg = compute_complement(&m, &g1, &g2);
        assert_eq!(cg.rectangles.len(), 1);
        let r = &cg.rectangles[0];
        check_area(r);
        assert_eq!(r.reeb.area(), int(0));
        assert_eq!(cg.cells.len(), 2);
        // Below the diagonal first (anchor order), above second.
        assert!(cg.cells[0].sample.x > cg.cells[0].sample.y);
        assert!(cg.cells[1].sample.x < cg.cells[1].sample.y);
        assert!(cg.adjacency.iter().all(|&(_, _, j)| j == Junction::Within));
        for c in &cg.cells {
            assert!(c.face.contains(&c.sample));
        }
    }

    #[test]
    fn eq2_three_rectangles() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 16 }).unwrap();
        let (g1, g2) = graphs(&m);
        assert_eq!(g1.arcs.len(), 1);
        assert_eq!(g2.arcs.len(), 3);
        let cg = compute_complement(&m, &g1, &g2);
        assert_eq!(cg.rectangles.len(), 3);
        for r in &cg.rectangles {
            check_area(r);
        }
        // Lower branches: one connected triangle-like image touching f2 = 0.
        for r in &cg.rectangles {
            let e2 = &g2.arcs[&r.e2];
            if g2.node(e2.lower).kind == crate::reeb::NodeKind::Min {
                assert_eq!(r.reeb.closed_components(), 1);
                let touches = r.reeb.faces.iter().any(|f| f.outer.iter().any(|p| p.y == r.bounds.y.0));
                assert!(touches);
            }
        }
        assert!(cg.adjacency.iter().any(|&(_, _, j)| matches!(j, Junction::Node { .. })));
    }
}
