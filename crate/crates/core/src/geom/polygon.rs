//! Exact planar point sets built from an arrangement.
//!
//! A [`PolygonSet`] is the union of open faces, closed segments and points.
//! A closed polygon therefore carries its boundary edges as segments, and the
//! difference of two closed sets keeps the lower-dimensional cuts out of its
//! faces, so a zero-area subtrahend can still separate faces.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::arrangement::{Arrangement, Segment};
use super::point::{on_segment, orient, ring_area2, ring_side, BBox, RPoint, RingSide};
use super::rational::{int, Rational};

/// Closed axis-aligned rectangle `[x.0, x.1] × [y.0, y.1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub x: (Rational, Rational),
    pub y: (Rational, Rational),
}

impl Bounds {
    pub fn new(x: (Rational, Rational), y: (Rational, Rational)) -> Self {
        Self { x, y }
    }

    pub fn area(&self) -> Rational {
        (&self.x.1 - &self.x.0) * (&self.y.1 - &self.y.0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.x.0 >= self.x.1 || self.y.0 >= self.y.1
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.x.0 <= p.x && p.x <= self.x.1 && self.y.0 <= p.y && p.y <= self.y.1
    }

    pub fn corners(&self) -> [RPoint; 4] {
        [
            RPoint::new(self.x.0.clone(), self.y.0.clone()),
            RPoint::new(self.x.1.clone(), self.y.0.clone()),
            RPoint::new(self.x.1.clone(), self.y.1.clone()),
            RPoint::new(self.x.0.clone(), self.y.1.clone()),
        ]
    }

    pub fn edges(&self) -> Vec<Segment> {
        let c = self.corners();
        (0..4).map(|i| (c[i].clone(), c[(i + 1) % 4].clone())).collect()
    }

    /// Exact clip of a segment (Liang-Barsky).
    pub fn clip(&self, a: &RPoint, b: &RPoint) -> Option<Segment> {
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        let mut t0 = Rational::zero();
        let mut t1 = int(1);
        let checks = [
            (-dx.clone(), &a.x - &self.x.0),
            (dx.clone(), &self.x.1 - &a.x),
            (-dy.clone(), &a.y - &self.y.0),
            (dy.clone(), &self.y.1 - &a.y),
        ];
        for (p, q) in checks {
            if p.is_zero() {
                if q.is_negative() {
                    return None;
                }
            } else {
                let r = q / &p;
                if p.is_negative() {
                    if r > t1 {
                        return None;
                    }
                    if r > t0 {
                        t0 = r;
                    }
                } else {
                    if r < t0 {
                        return None;
                    }
                    if r < t1 {
                        t1 = r;
                    }
                }
            }
        }
        let at = |t: &Rational| RPoint::new(&a.x + &dx * t, &a.y + &dy * t);
        Some((at(&t0), at(&t1)))
    }
}

/// A maximal connected open region: an outer ring (counter-clockwise) and
/// the rings of its holes (clockwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub outer: Vec<RPoint>,
    pub holes: Vec<Vec<RPoint>>,
}

impl Face {
    pub fn area(&self) -> Rational {
        let two = int(2);
        let mut a = ring_area2(&self.outer);
        for h in &self.holes {
            a += ring_area2(h);
        }
        a / two
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(self.outer.iter())
    }

    /// Open-set membership: strictly inside the outer ring, strictly
    /// outside every hole, and on no boundary edge.
    pub fn contains(&self, p: &RPoint) -> bool {
        if ring_side(&self.outer, p) != RingSide::Inside {
            return false;
        }
        // Rings may contain slits traversed twice; those are boundary too.
        self.holes.iter().all(|h| ring_side(h, p) == RingSide::Outside)
    }

    pub fn on_boundary(&self, p: &RPoint) -> bool {
        std::iter::once(&self.outer)
            .chain(self.holes.iter())
            .any(|r| ring_side(r, p) == RingSide::Boundary)
    }

    pub fn boundary_segments(&self) -> impl Iterator<Item = (&RPoint, &RPoint)> {
        std::iter::once(&self.outer).chain(self.holes.iter()).flat_map(|r| {
            (0..r.len()).map(move |i| (&r[i], &r[(i + 1) % r.len()]))
        })
    }

    /// Lowest, then leftmost, outer vertex; defines the deterministic face order.
    pub fn anchor(&self) -> &RPoint {
        self.outer.iter().min_by(|a, b| a.cmp_yx(b)).expect("empty ring")
    }

    /// A point strictly inside the face whose coordinates avoid the given
    /// values; see [`interior_points`].
    pub fn interior_point(&self, avoid: &Avoid<'_>) -> Option<RPoint> {
        interior_points(self, avoid, 1).into_iter().next()
    }
}

/// Coordinate values an interior point must not take.
#[derive(Default)]
pub struct Avoid<'a> {
    pub x: Option<&'a dyn Fn(&Rational) -> bool>,
    pub y: Option<&'a dyn Fn(&Rational) -> bool>,
}

impl Avoid<'_> {
    fn bad_x(&self, v: &Rational) -> bool {
        self.x.map_or(false, |f| f(v))
    }
    fn bad_y(&self, v: &Rational) -> bool {
        self.y.map_or(false, |f| f(v))
    }
}

/// Fractions 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ... in a fixed order.
pub fn fraction_sequence() -> impl Iterator<Item = Rational> {
    (2i64..).flat_map(|d| (1..d).filter(move |n| num_integer::gcd(*n, d) == 1).map(move |n| Rational::new(n.into(), d.into())))
}

fn pick_between(lo: &Rational, hi: &Rational, bad: impl Fn(&Rational) -> bool, skip: usize) -> Rational {
    fraction_sequence()
        .map(|t| lo + (hi - lo) * t)
        .filter(|v| !bad(v))
        .nth(skip)
        .expect("finite exclusion set")
}

/// Crossings of the horizontal line `y = c` with all rings of a face,
/// grouped into the open x-intervals that lie inside the face.
fn scanline_intervals(face: &Face, c: &Rational) -> Vec<(Rational, Rational)> {
    let mut xs = Vec::new();
    for (a, b) in face.boundary_segments() {
        if (&a.y < c) != (&b.y < c) {
            let x = &a.x + (c - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            xs.push(x);
        }
    }
    xs.sort();
    xs.chunks(2)
        .filter(|w| w.len() == 2 && w[0] < w[1])
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

/// Deterministic sequence of distinct points strictly inside the face.
///
/// Each point sits on a horizontal scanline through the face that avoids
/// every vertex height; the first point uses the tallest vertex band and the
/// widest inside interval, later points walk through other bands and
/// fractions. Coordinates rejected by `avoid` are skipped.
pub fn interior_points(face: &Face, avoid: &Avoid<'_>, count: usize) -> Vec<RPoint> {
    let mut ys: Vec<Rational> = face.boundary_segments().map(|(a, _)| a.y.clone()).collect();
    ys.sort();
    ys.dedup();
    let mut bands: Vec<(Rational, Rational)> = ys.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    bands.sort_by(|a, b| (&b.1 - &b.0).cmp(&(&a.1 - &a.0)).then_with(|| a.0.cmp(&b.0)));
    let mut out: Vec<RPoint> = Vec::new();
    if bands.is_empty() {
        return out;
    }
    let is_vertex_y = |v: &Rational| ys.binary_search(v).is_ok();
    let mut round = 0usize;
    while out.len() < count && round < count * 8 + 8 {
        for (lo, hi) in &bands {
            if out.len() >= count {
                break;
            }
            let c = pick_between(lo, hi, |v| avoid.bad_y(v) || is_vertex_y(v), round);
            let mut intervals = scanline_intervals(face, &c);
            if intervals.is_empty() {
                continue;
            }
            intervals.sort_by(|a, b| (&b.1 - &b.0).cmp(&(&a.1 - &a.0)).then_with(|| a.0.cmp(&b.0)));
            let (x0, x1) = &intervals[round % intervals.len()];
            let x = pick_between(x0, x1, |v| avoid.bad_x(v), round / intervals.len());
            let p = RPoint::new(x, c);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        round += 1;
    }
    out
}

/// Result of locating a point in a [`PolygonSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Face(usize),
    /// On a segment or point of the set, but in no open face.
    LowerDim,
    Outside,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolygonSet {
    pub faces: Vec<Face>,
    pub segments: Vec<Segment>,
    pub points: Vec<RPoint>,
}

impl PolygonSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The closed rectangle.
    pub fn rectangle(b: &Bounds) -> Self {
        if b.is_degenerate() {
            let c = b.corners();
            let segs = if c[0] == c[2] { vec![] } else { vec![(c[0].clone(), c[2].clone())] };
            let points = if segs.is_empty() { vec![c[0].clone()] } else { vec![] };
            return Self { faces: vec![], segments: segs, points };
        }
        let outer = b.corners().to_vec();
        Self { faces: vec![Face { outer, holes: vec![] }], segments: b.edges(), points: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty() && self.segments.is_empty() && self.points.is_empty()
    }

    pub fn area(&self) -> Rational {
        self.faces.iter().map(Face::area).sum()
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.locate(p) != Location::Outside
    }

    pub fn locate(&self, p: &RPoint) -> Location {
        for (i, f) in self.faces.iter().enumerate() {
            if f.contains(p) {
                return Location::Face(i);
            }
        }
        if self.points.iter().any(|q| q == p) || self.segments.iter().any(|(a, b)| on_segment(a, b, p)) {
            return Location::LowerDim;
        }
        Location::Outside
    }

    pub fn union(&self, other: &PolygonSet) -> PolygonSet {
        boolean(self, other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &PolygonSet) -> PolygonSet {
        boolean(self, other, |a, b| a && b)
    }

    /// `self` minus the closure of `other`.
    pub fn subtract(&self, other: &PolygonSet) -> PolygonSet {
        boolean(self, other, |a, b| a && !b)
    }

    fn all_segments(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = self.segments.clone();
        for f in &self.faces {
            out.extend(f.boundary_segments().map(|(a, b)| (a.clone(), b.clone())));
        }
        out
    }

    /// Number of connected components of the closure of the set.
    pub fn closed_components(&self) -> usize {
        let arr = Arrangement::build(self.all_segments(), self.points.clone());
        let mut uf = UnionFind::new(arr.vertices.len());
        for &(a, b) in &arr.edges {
            uf.union(a, b);
        }
        let mut roots: Vec<usize> = (0..arr.vertices.len()).map(|v| uf.find(v)).collect();
        roots.sort();
        roots.dedup();
        roots.len()
    }
}

fn boolean(a: &PolygonSet, b: &PolygonSet, op: impl Fn(bool, bool) -> bool) -> PolygonSet {
    let mut segs = a.all_segments();
    segs.extend(b.all_segments());
    let mut pts = a.points.clone();
    pts.extend(b.points.iter().cloned());
    let arr = Arrangement::build(segs, pts);
    extract(&arr, |p| op(a.contains(p), b.contains(p)))
}

/// Per-cell membership of an arrangement under a point predicate.
pub struct Membership {
    pub face: Vec<bool>,
    pub edge: Vec<bool>,
    pub vertex: Vec<bool>,
}

impl Membership {
    pub fn evaluate(arr: &Arrangement, pred: impl Fn(&RPoint) -> bool) -> Membership {
        let face = (0..arr.faces.len())
            .map(|f| {
                let (outer, holes) = arr.face_rings(f);
                let probe = Face { outer, holes };
                probe.interior_point(&Avoid::default()).map_or(false, |p| pred(&p))
            })
            .collect();
        let edge = (0..arr.edges.len())
            .map(|e| {
                let (a, b) = arr.edge_points(e);
                pred(&a.midpoint(b))
            })
            .collect();
        let vertex = arr.vertices.iter().map(&pred).collect();
        Membership { face, edge, vertex }
    }

    /// Evaluates two predicates that share one probe point per cell.
    pub fn evaluate_pair(arr: &Arrangement, pred: impl Fn(&RPoint) -> (bool, bool)) -> (Membership, Membership) {
        let mut a = Membership { face: vec![], edge: vec![], vertex: vec![] };
        let mut b = Membership { face: vec![], edge: vec![], vertex: vec![] };
        for f in 0..arr.faces.len() {
            let (outer, holes) = arr.face_rings(f);
            let probe = Face { outer, holes };
            let (x, y) = probe.interior_point(&Avoid::default()).map_or((false, false), |p| pred(&p));
            a.face.push(x);
            b.face.push(y);
        }
        for e in 0..arr.edges.len() {
            let (p, q) = arr.edge_points(e);
            let (x, y) = pred(&p.midpoint(q));
            a.edge.push(x);
            b.edge.push(y);
        }
        for v in &arr.vertices {
            let (x, y) = pred(v);
            a.vertex.push(x);
            b.vertex.push(y);
        }
        (a, b)
    }
}

/// Extracts the point set selected by a predicate over an arrangement.
pub fn extract(arr: &Arrangement, pred: impl Fn(&RPoint) -> bool) -> PolygonSet {
    let m = Membership::evaluate(arr, pred);
    extract_with(arr, &m)
}

pub fn extract_with(arr: &Arrangement, m: &Membership) -> PolygonSet {
    let in_face = |f: Option<usize>| f.map_or(false, |f| m.face[f]);
    let mut uf = UnionFind::new(arr.faces.len());
    let sides: Vec<(Option<usize>, Option<usize>)> =
        (0..arr.edges.len()).map(|e| (arr.left_face(2 * e), arr.left_face(2 * e + 1))).collect();
    for (e, &(l, r)) in sides.iter().enumerate() {
        if m.edge[e] && in_face(l) && in_face(r) {
            uf.union(l.unwrap(), r.unwrap());
        }
    }
    let interior = |e: usize| {
        let (l, r) = sides[e];
        m.edge[e] && in_face(l) && in_face(r)
    };

    // Re-trace the boundary graph of the merged in-faces.
    let mut kept = Vec::new();
    let mut kept_half = Vec::new();
    for (e, &(l, r)) in sides.iter().enumerate() {
        if !interior(e) && (in_face(l) || in_face(r)) {
            kept.push(arr.edges[e]);
            kept_half.push(2 * e);
        }
    }
    let mut faces = Vec::new();
    if !kept.is_empty() {
        let sub = Arrangement::from_planar_graph(arr.vertices.clone(), kept, Vec::new());
        for f in &sub.faces {
            let h = sub.cycles[f.outer].half_edges[0];
            let orig = kept_half[h / 2] ^ (h % 2);
            if in_face(arr.left_face(orig)) {
                let outer = sub.cycle_ring(f.outer);
                let holes = f.holes.iter().map(|&c| sub.cycle_ring(c)).collect();
                faces.push(Face { outer, holes });
            }
        }
    }
    faces.sort_by(|a, b| a.anchor().cmp_yx(b.anchor()));

    let mut segments = Vec::new();
    let mut vertex_has_edge = vec![false; arr.vertices.len()];
    for e in 0..arr.edges.len() {
        if m.edge[e] {
            let (a, b) = arr.edges[e];
            vertex_has_edge[a] = true;
            vertex_has_edge[b] = true;
            if !interior(e) {
                segments.push((arr.vertices[a].clone(), arr.vertices[b].clone()));
            }
        }
    }
    let mut inside_face_vertex = vec![false; arr.vertices.len()];
    for (f, face) in arr.faces.iter().enumerate() {
        if m.face[f] {
            for &v in &face.isolated {
                inside_face_vertex[v] = true;
            }
        }
    }
    let points = (0..arr.vertices.len())
        .filter(|&v| m.vertex[v] && !vertex_has_edge[v] && !inside_face_vertex[v])
        .map(|v| arr.vertices[v].clone())
        .collect();
    PolygonSet { faces, segments, points }
}

/// Exact convex hull (monotone chain). Collinear input yields a segment,
/// coincident input a single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hull {
    Point(RPoint),
    Segment(RPoint, RPoint),
    /// Counter-clockwise, no collinear vertices.
    Polygon(Vec<RPoint>),
}

impl Hull {
    pub fn of(points: &[RPoint]) -> Hull {
        let mut pts: Vec<RPoint> = points.to_vec();
        pts.sort();
        pts.dedup();
        match pts.len() {
            0 => panic!("convex hull of no points"),
            1 => return Hull::Point(pts.pop().unwrap()),
            _ => {}
        }
        let mut lower: Vec<RPoint> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<RPoint> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() <= 2 {
            let first = pts.first().unwrap().clone();
            let last = pts.last().unwrap().clone();
            return Hull::Segment(first, last);
        }
        Hull::Polygon(lower)
    }

    pub fn is_degenerate(&self) -> bool {
        !matches!(self, Hull::Polygon(_))
    }

    pub fn area(&self) -> Rational {
        match self {
            Hull::Polygon(r) => ring_area2(r) / int(2),
            _ => Rational::zero(),
        }
    }

    /// Closed membership.
    pub fn contains(&self, p: &RPoint) -> bool {
        match self {
            Hull::Point(q) => q == p,
            Hull::Segment(a, b) => on_segment(a, b, p),
            Hull::Polygon(r) => {
                (0..r.len()).all(|i| orient(&r[i], &r[(i + 1) % r.len()], p) != Ordering::Less)
            }
        }
    }

    pub fn edges(&self) -> Vec<Segment> {
        match self {
            Hull::Point(_) => vec![],
            Hull::Segment(a, b) => vec![(a.clone(), b.clone())],
            Hull::Polygon(r) => (0..r.len()).map(|i| (r[i].clone(), r[(i + 1) % r.len()].clone())).collect(),
        }
    }

    pub fn to_set(&self) -> PolygonSet {
        match self {
            Hull::Point(p) => PolygonSet { points: vec![p.clone()], ..Default::default() },
            Hull::Segment(a, b) => PolygonSet { segments: vec![(a.clone(), b.clone())], ..Default::default() },
            Hull::Polygon(r) => PolygonSet {
                faces: vec![Face { outer: r.clone(), holes: vec![] }],
                segments: self.edges(),
                points: vec![],
            },
        }
    }
}

/// Convex hull of a point list as a closed [`PolygonSet`].
pub fn convex_hull(points: &[RPoint]) -> PolygonSet {
    Hull::of(points).to_set()
}

/// Closed union of many convex hulls, indexed for point membership.
pub struct HullCover {
    polygons: Vec<(BBox, Vec<RPoint>)>,
    segments: Vec<(BBox, Segment)>,
    points: Vec<RPoint>,
}

impl HullCover {
    pub fn new(hulls: impl IntoIterator<Item = Hull>) -> Self {
        let mut polygons = Vec::new();
        let mut raw_segments = Vec::new();
        let mut points = Vec::new();
        for h in hulls {
            match h {
                Hull::Polygon(r) => polygons.push((BBox::of(r.iter()), r)),
                Hull::Segment(a, b) => raw_segments.push((a, b)),
                Hull::Point(p) => points.push(p),
            }
        }
        let segments = super::arrangement::merge_collinear(raw_segments, &mut points)
            .into_iter()
            .map(|(a, b)| (BBox::of([&a, &b]), (a, b)))
            .collect();
        points.sort();
        points.dedup();
        Self { polygons, segments, points }
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty() && self.segments.is_empty() && self.points.is_empty()
    }

    pub fn polygons(&self) -> impl Iterator<Item = &Vec<RPoint>> {
        self.polygons.iter().map(|(_, r)| r)
    }

    /// Merged zero-area pieces.
    pub fn degenerate_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().map(|(_, s)| s)
    }

    pub fn degenerate_points(&self) -> &[RPoint] {
        &self.points
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        let pb = p.to_f64();
        self.polygons.iter().any(|(b, r)| {
            b.contains(pb) && (0..r.len()).all(|i| orient(&r[i], &r[(i + 1) % r.len()], p) != Ordering::Less)
        }) || self.segments.iter().any(|(b, (s, t))| b.contains(pb) && on_segment(s, t, p))
            || self.points.binary_search(p).is_ok()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::ratio;

    fn p(x: i64, y: i64) -> RPoint {
        RPoint::new(int(x), int(y))
    }

    fn unit_square() -> PolygonSet {
        PolygonSet::rectangle(&Bounds::new((int(0), int(1)), (int(0), int(1))))
    }

    #[test]
    fn hull_cases() {
        let tri = convex_hull(&[p(0, 0), p(1, 0), p(0, 1)]);
        assert_eq!(tri.area(), ratio(1, 2));
        let seg = Hull::of(&[p(0, 0), p(1, 1), p(2, 2)]);
        assert_eq!(seg, Hull::Segment(p(0, 0), p(2, 2)));
        assert_eq!(seg.area(), int(0));
        let sq = Hull::of(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1), RPoint::new(ratio(1, 2), ratio(1, 2))]);
        match &sq {
            Hull::Polygon(r) => assert_eq!(r.len(), 4),
            _ => panic!(),
        }
        assert_eq!(sq.area(), int(1));
    }

    #[test]
    fn square_minus_diagonal_has_two_faces() {
        let diag = convex_hull(&[p(0, 0), p(1, 1)]);
        let rest = unit_square().subtract(&diag);
        assert_eq!(rest.faces.len(), 2);
        assert_eq!(rest.area(), int(1));
        let upper = rest.faces.iter().position(|f| f.contains(&RPoint::new(ratio(1, 4), ratio(3, 4)))).unwrap();
        let q = rest.faces[upper].interior_point(&Avoid::default()).unwrap();
        assert!(q.y > q.x);
        assert_eq!(rest.locate(&RPoint::new(ratio(1, 2), ratio(1, 2))), Location::Outside);
    }

    #[test]
    fn square_minus_square_is_empty() {
        let sq = unit_square();
        assert!(sq.subtract(&sq).faces.is_empty());
        assert_eq!(sq.subtract(&sq).area(), int(0));
    }

    #[test]
    fn square_minus_triangle() {
        let tri = convex_hull(&[p(0, 0), p(1, 0), p(0, 1)]);
        let rest = unit_square().subtract(&tri);
        assert_eq!(rest.faces.len(), 1);
        assert_eq!(rest.area(), ratio(1, 2));
    }

    #[test]
    fn annulus_has_one_face_with_hole() {
        let outer = PolygonSet::rectangle(&Bounds::new((int(0), int(3)), (int(0), int(3))));
        let inner = PolygonSet::rectangle(&Bounds::new((int(1), int(2)), (int(1), int(2))));
        let ring = outer.subtract(&inner);
        assert_eq!(ring.faces.len(), 1);
        assert_eq!(ring.faces[0].holes.len(), 1);
        assert_eq!(ring.area(), int(8));
        assert!(PolygonSet::empty().faces.is_empty());
    }

    #[test]
    fn union_and_intersection() {
        let a = PolygonSet::rectangle(&Bounds::new((int(0), int(2)), (int(0), int(2))));
        let b = PolygonSet::rectangle(&Bounds::new((int(1), int(3)), (int(1), int(3))));
        let u = a.union(&b);
        assert_eq!(u.faces.len(), 1);
        assert_eq!(u.area(), int(7));
        let i = a.intersect(&b);
        assert_eq!(i.area(), int(1));
        assert_eq!(a.subtract(&b).area(), int(3));
        assert!(a.subtract(&b).intersect(&b).faces.is_empty());
        assert_eq!(a.union(&a).area(), a.area());
    }

    #[test]
    fn locate_cases() {
        let sq = unit_square();
        assert_eq!(sq.locate(&RPoint::new(ratio(1, 2), ratio(1, 2))), Location::Face(0));
        assert_eq!(sq.locate(&p(2, 2)), Location::Outside);
        assert_eq!(sq.locate(&p(1, 0)), Location::LowerDim);
    }

    #[test]
    fn interior_point_avoids_values() {
        let sq = PolygonSet::rectangle(&Bounds::new((int(0), int(2)), (int(0), int(2))));
        let avoid_one = |v: &Rational| *v == int(1);
        let avoid = Avoid { x: Some(&avoid_one), y: Some(&avoid_one) };
        let q = sq.faces[0].interior_point(&avoid).unwrap();
        assert!(q.x != int(1) && q.y != int(1));
        assert!(sq.faces[0].contains(&q));
    }

    #[test]
    fn clip_segment() {
        let b = Bounds::new((int(0), int(1)), (int(0), int(1)));
        let (a, c) = b.clip(&p(-1, -1), &p(2, 2)).unwrap();
        assert_eq!((a, c), (p(0, 0), p(1, 1)));
        assert!(b.clip(&p(2, 0), &p(3, 1)).is_none());
    }
}
