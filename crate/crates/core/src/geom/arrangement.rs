//! Planar arrangement of exact segments.
//!
//! Segments are merged when collinear and overlapping, split at every
//! mutual intersection, and the resulting planar graph is traversed into
//! half-edge cycles. Bounded faces are the counter-clockwise cycles, each
//! owning the clockwise cycles (holes) it immediately encloses.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use super::point::{ring_area2, ring_side, segment_intersection, BBox, RPoint, RingSide, SegmentHit};
use super::rational::Rational;

pub type Segment = (RPoint, RPoint);

#[derive(Debug, Clone)]
pub struct Cycle {
    /// Half-edges in traversal order.
    pub half_edges: Vec<usize>,
    pub area2: Rational,
}

#[derive(Debug, Clone)]
pub struct ArrFace {
    pub outer: usize,
    pub holes: Vec<usize>,
    /// Vertices with no incident edge lying inside this face.
    pub isolated: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub vertices: Vec<RPoint>,
    /// Undirected edges; edge `e` has half-edges `2e` (a→b) and `2e+1` (b→a).
    pub edges: Vec<(usize, usize)>,
    pub next: Vec<usize>,
    pub cycles: Vec<Cycle>,
    pub half_cycle: Vec<usize>,
    pub faces: Vec<ArrFace>,
    /// Face owning each cycle: the cycle's own face for outer cycles, the
    /// enclosing face for holes; `None` is the unbounded face.
    pub cycle_face: Vec<Option<usize>>,
    pub isolated: Vec<usize>,
}

/// Key identifying the supporting line of a segment, plus the scalar
/// parameter along that line.
fn line_key(a: &RPoint, b: &RPoint) -> (bool, Rational, Rational) {
    if a.x != b.x {
        let slope = (&b.y - &a.y) / (&b.x - &a.x);
        let offset = &a.y - &slope * &a.x;
        (false, slope, offset)
    } else {
        (true, Rational::zero(), a.x.clone())
    }
}

fn line_param(vertical: bool, p: &RPoint) -> &Rational {
    if vertical {
        &p.y
    } else {
        &p.x
    }
}

/// Replaces collinear overlapping (or abutting) segments by their union and
/// drops zero-length segments into `points`.
pub fn merge_collinear(segments: Vec<Segment>, points: &mut Vec<RPoint>) -> Vec<Segment> {
    let mut groups: HashMap<(bool, Rational, Rational), Vec<Segment>> = HashMap::new();
    for (a, b) in segments {
        if a == b {
            points.push(a);
            continue;
        }
        let key = line_key(&a, &b);
        let vertical = key.0;
        let (a, b) = if line_param(vertical, &a) <= line_param(vertical, &b) { (a, b) } else { (b, a) };
        groups.entry(key).or_default().push((a, b));
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    let mut out = Vec::new();
    for key in keys {
        let vertical = key.0;
        let mut segs = groups.remove(&key).unwrap();
        segs.sort_by(|s, t| line_param(vertical, &s.0).cmp(line_param(vertical, &t.0)));
        let mut iter = segs.into_iter();
        let mut cur = iter.next().unwrap();
        for s in iter {
            if line_param(vertical, &s.0) <= line_param(vertical, &cur.1) {
                if line_param(vertical, &s.1) > line_param(vertical, &cur.1) {
                    cur.1 = s.1;
                }
            } else {
                out.push(std::mem::replace(&mut cur, s));
            }
        }
        out.push(cur);
    }
    out
}

fn direction_cmp(o: &RPoint, a: &RPoint, b: &RPoint) -> Ordering {
    // Counter-clockwise angular order of directions o→a and o→b, starting at +x.
    let (ax, ay) = (&a.x - &o.x, &a.y - &o.y);
    let (bx, by) = (&b.x - &o.x, &b.y - &o.y);
    let upper = |x: &Rational, y: &Rational| y.is_positive() || (y.is_zero() && x.is_positive());
    let (ua, ub) = (upper(&ax, &ay), upper(&bx, &by));
    if ua != ub {
        return if ua { Ordering::Less } else { Ordering::Greater };
    }
    let c = &ax * &by - &ay * &bx;
    Rational::zero().cmp(&c)
}

impl Arrangement {
    /// Builds the arrangement of arbitrary segments and isolated points.
    pub fn build(segments: Vec<Segment>, points: Vec<RPoint>) -> Arrangement {
        let mut points = points;
        let segs = merge_collinear(segments, &mut points);
        let boxes: Vec<BBox> = segs.iter().map(|(a, b)| BBox::of([a, b])).collect();
        let mut order: Vec<usize> = (0..segs.len()).collect();
        order.sort_by(|&i, &j| boxes[i].min.0.total_cmp(&boxes[j].min.0));

        let mut splits: Vec<Vec<RPoint>> = segs.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        for (k, &i) in order.iter().enumerate() {
            for &j in &order[k + 1..] {
                if boxes[j].min.0 > boxes[i].max.0 {
                    break;
                }
                if !boxes[i].overlaps(&boxes[j]) {
                    continue;
                }
                let (a, b) = &segs[i];
                let (c, d) = &segs[j];
                match segment_intersection(a, b, c, d) {
                    SegmentHit::None => {}
                    SegmentHit::Point(p) => {
                        splits[i].push(p.clone());
                        splits[j].push(p);
                    }
                    SegmentHit::Overlap(p, q) => {
                        // Only reachable for collinear pieces that merge_collinear
                        // kept apart, which cannot overlap; keep the split anyway.
                        splits[i].push(p.clone());
                        splits[i].push(q.clone());
                        splits[j].push(p);
                        splits[j].push(q);
                    }
                }
            }
        }
        let mut lone = Vec::new();
        for p in points {
            let pb = p.to_f64();
            let mut hit = false;
            for (i, (a, b)) in segs.iter().enumerate() {
                if boxes[i].contains(pb) && super::point::on_segment(a, b, &p) {
                    splits[i].push(p.clone());
                    hit = true;
                }
            }
            if !hit {
                lone.push(p);
            }
        }

        let mut index: HashMap<RPoint, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut vid = |p: RPoint, vertices: &mut Vec<RPoint>| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        let mut edge_set: BTreeMap<(usize, usize), ()> = BTreeMap::new();
        for (i, mut pts) in splits.into_iter().enumerate() {
            let vertical = segs[i].0.x == segs[i].1.x;
            pts.sort_by(|p, q| line_param(vertical, p).cmp(line_param(vertical, q)));
            pts.dedup();
            let ids: Vec<usize> = pts.into_iter().map(|p| vid(p, &mut vertices)).collect();
            for w in ids.windows(2) {
                let key = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
                edge_set.insert(key, ());
            }
        }
        let isolated_pts: Vec<usize> = lone.into_iter().map(|p| vid(p, &mut vertices)).collect();
        let edges: Vec<(usize, usize)> = edge_set.into_keys().collect();
        Self::from_planar_graph(vertices, edges, isolated_pts)
    }

    /// Builds the half-edge structure of an already planar straight-line
    /// graph (edges meet only at shared vertices).
    pub fn from_planar_graph(vertices: Vec<RPoint>, edges: Vec<(usize, usize)>, isolated: Vec<usize>) -> Arrangement {
        let nh = edges.len() * 2;
        let origin = |h: usize| if h % 2 == 0 { edges[h / 2].0 } else { edges[h / 2].1 };
        let target = |h: usize| if h % 2 == 0 { edges[h / 2].1 } else { edges[h / 2].0 };
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for h in 0..nh {
            outgoing[origin(h)].push(h);
        }
        let mut pos_in_fan = vec![0usize; nh];
        for (v, fan) in outgoing.iter_mut().enumerate() {
            let o = &vertices[v];
            fan.sort_by(|&h, &k| direction_cmp(o, &vertices[target(h)], &vertices[target(k)]));
            for (i, &h) in fan.iter().enumerate() {
                pos_in_fan[h] = i;
            }
        }
        let mut next = vec![0usize; nh];
        for h in 0..nh {
            let v = target(h);
            let twin = h ^ 1;
            let fan = &outgoing[v];
            let i = pos_in_fan[twin];
            next[h] = fan[(i + fan.len() - 1) % fan.len()];
        }
        let mut half_cycle = vec![usize::MAX; nh];
        let mut cycles = Vec::new();
        for start in 0..nh {
            if half_cycle[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut hs = Vec::new();
            let mut h = start;
            loop {
                half_cycle[h] = id;
                hs.push(h);
                h = next[h];
                if h == start {
                    break;
                }
            }
            let ring: Vec<RPoint> = hs.iter().map(|&h| vertices[origin(h)].clone()).collect();
            cycles.push(Cycle { half_edges: hs, area2: ring_area2(&ring) });
        }

        let mut arr = Arrangement {
            vertices,
            edges,
            next,
            cycles,
            half_cycle,
            faces: Vec::new(),
            cycle_face: Vec::new(),
            isolated,
        };
        arr.assign_faces();
        arr
    }

    pub fn origin(&self, h: usize) -> usize {
        if h % 2 == 0 {
            self.edges[h / 2].0
        } else {
            self.edges[h / 2].1
        }
    }

    pub fn cycle_ring(&self, c: usize) -> Vec<RPoint> {
        self.cycles[c].half_edges.iter().map(|&h| self.vertices[self.origin(h)].clone()).collect()
    }

    fn assign_faces(&mut self) {
        let rings: Vec<Vec<RPoint>> = (0..self.cycles.len()).map(|c| self.cycle_ring(c)).collect();
        let boxes: Vec<BBox> = rings.iter().map(|r| BBox::of(r.iter())).collect();
        let mut cycle_face = vec![None; self.cycles.len()];
        let mut faces = Vec::new();
        let mut positive: Vec<usize> = Vec::new();
        for (c, cyc) in self.cycles.iter().enumerate() {
            if cyc.area2.is_positive() {
                cycle_face[c] = Some(faces.len());
                faces.push(ArrFace { outer: c, holes: Vec::new(), isolated: Vec::new() });
                positive.push(c);
            }
        }
        // Smallest positive cycle strictly containing a point.
        let enclosing = |p: &RPoint| -> Option<usize> {
            let pb = p.to_f64();
            let mut best: Option<usize> = None;
            for &c in &positive {
                if !boxes[c].contains(pb) {
                    continue;
                }
                if ring_side(&rings[c], p) == RingSide::Inside
                    && best.map_or(true, |b| self.cycles[c].area2 < self.cycles[b].area2)
                {
                    best = Some(c);
                }
            }
            best
        };
        for c in 0..self.cycles.len() {
            if self.cycles[c].area2.is_positive() {
                continue;
            }
            let owner = enclosing(&rings[c][0]).map(|oc| cycle_face[oc].unwrap());
            cycle_face[c] = owner;
            if let Some(f) = owner {
                faces[f].holes.push(c);
            }
        }
        for &v in &self.isolated {
            if let Some(oc) = enclosing(&self.vertices[v]) {
                faces[cycle_face[oc].unwrap()].isolated.push(v);
            }
        }
        self.faces = faces;
        self.cycle_face = cycle_face;
    }

    /// Face on the left of a half-edge (`None` = unbounded).
    pub fn left_face(&self, h: usize) -> Option<usize> {
        self.cycle_face[self.half_cycle[h]]
    }

    pub fn face_rings(&self, f: usize) -> (Vec<RPoint>, Vec<Vec<RPoint>>) {
        let face = &self.faces[f];
        (self.cycle_ring(face.outer), face.holes.iter().map(|&c| self.cycle_ring(c)).collect())
    }

    pub fn edge_points(&self, e: usize) -> (&RPoint, &RPoint) {
        let (a, b) = self.edges[e];
        (&self.vertices[a], &self.vertices[b])
    }
}
