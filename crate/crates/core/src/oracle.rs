//! Brute-force ground truth: contours by region growing, pair relations by
//! direct geometric tests, and cells by clustering sampled isovalue pairs.
//! Nothing here uses the sweep or the arrangement code.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complement::ComplementGraph;
use crate::geom::point::{on_segment, orient, segments_touch};
use crate::geom::polygon::UnionFind;
use crate::geom::rational::{from_f64_rounded, int, qcmp, ratio, to_literal};
use crate::geom::{RPoint, Rational};
use crate::mesh::{grid_mesh, Field, MeshError, SimplicialMesh};
use crate::reeb::{BoundaryMode, ReebGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Intersecting,
    FirstInsideSecond,
    SecondInsideFirst,
    Disjoint,
    UndeterminedBoundary,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Intersecting => "INTERSECTING",
            Relation::FirstInsideSecond => "FIRST_INSIDE_SECOND",
            Relation::SecondInsideFirst => "SECOND_INSIDE_FIRST",
            Relation::Disjoint => "DISJOINT",
            Relation::UndeterminedBoundary => "UNDETERMINED_BOUNDARY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("isovalue {0} equals a vertex value")]
    NonGeneric(String),
}

/// A contour as a soup of level segments, one per crossed triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoupContour {
    /// Sorted triangle ids.
    pub triangles: Vec<usize>,
    /// Level segment of each triangle, same order.
    pub segments: Vec<(RPoint, RPoint)>,
    /// Values of the other field at the segment endpoints.
    pub other: Vec<(Rational, Rational)>,
    pub closed: bool,
}

/// Point of edge `ab` at level `l`, with the other field's value there.
fn level_point(mesh: &SimplicialMesh, field: Field, a: usize, b: usize, l: &Rational) -> (RPoint, Rational) {
    let (fa, fb) = (mesh.value(field, a), mesh.value(field, b));
    let t = (l - fa) / (fb - fa);
    let (pa, pb) = (&mesh.vertices()[a].coords, &mesh.vertices()[b].coords);
    let (ga, gb) = (mesh.value(field.other(), a), mesh.value(field.other(), b));
    (RPoint::new(&pa[0] + (&pb[0] - &pa[0]) * &t, &pa[1] + (&pb[1] - &pa[1]) * &t), ga + (gb - ga) * &t)
}

/// Index for repeated level-set queries on one field.
pub struct LevelIndex<'a> {
    mesh: &'a SimplicialMesh,
    field: Field,
    /// Triangles sorted by span minimum, with their spans.
    by_min: Vec<(Rational, Rational, usize)>,
    values: Vec<Rational>,
    mode: BoundaryMode,
}

impl<'a> LevelIndex<'a> {
    pub fn new(mesh: &'a SimplicialMesh, field: Field, mode: BoundaryMode) -> Self {
        let mut by_min: Vec<(Rational, Rational, usize)> = (0..mesh.simplices().len())
            .map(|s| {
                let vals: Vec<&Rational> = mesh.simplices()[s].iter().map(|&v| mesh.value(field, v)).collect();
                let lo = vals.iter().min().unwrap();
                let hi = vals.iter().max().unwrap();
                ((*lo).clone(), (*hi).clone(), s)
            })
            .collect();
        by_min.sort();
        let mut values: Vec<Rational> = (0..mesh.vertices().len()).map(|v| mesh.value(field, v).clone()).collect();
        values.sort();
        values.dedup();
        Self { mesh, field, by_min, values, mode }
    }

    pub fn is_generic(&self, l: &Rational) -> bool {
        self.values.binary_search(l).is_err()
    }

    /// Components of the level set at `l`.
    pub fn contours_at(&self, l: &Rational) -> Result<Vec<SoupContour>, OracleError> {
        if !self.is_generic(l) {
            return Err(OracleError::NonGeneric(to_literal(l)));
        }
        let end = self.by_min.partition_point(|(lo, _, _)| lo < l);
        let crossing: Vec<usize> = self.by_min[..end].iter().filter(|(_, hi, _)| hi > l).map(|t| t.2).collect();
        let mesh = self.mesh;
        let field = self.field;
        let mut uf = UnionFind::new(crossing.len());
        // Crossing edges as vertex pairs, mapped to the triangles holding them.
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut segs = Vec::with_capacity(crossing.len());
        for (i, &s) in crossing.iter().enumerate() {
            let t = &mesh.simplices()[s];
            let mut pts = Vec::new();
            for a in 0..t.len() {
                for b in a + 1..t.len() {
                    let (u, v) = (t[a].min(t[b]), t[a].max(t[b]));
                    let (fu, fv) = (mesh.value(field, u), mesh.value(field, v));
                    if (fu < l) != (fv < l) {
                        by_edge.entry((u, v)).or_default().push(i);
                        pts.push(level_point(mesh, field, u, v, l));
                    }
                }
            }
            let mut pts = pts.into_iter();
            let (p, u) = pts.next().unwrap();
            let (q, w) = pts.next().unwrap();
            segs.push(((p, q), (u, w)));
        }
        let mut boundary_members = Vec::new();
        for (edge, owners) in &by_edge {
            for w in owners.windows(2) {
                uf.union(w[0], w[1]);
            }
            // An edge held by one triangle of the whole mesh is on the boundary.
            let holders = mesh
                .topology()
                .edge_index
                .get(edge)
                .map_or(0, |&e| mesh.topology().edge_simplices[e].len());
            if holders == 1 {
                boundary_members.push(owners[0]);
            }
        }
        if self.mode == BoundaryMode::Collapse {
            for w in boundary_members.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..crossing.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut open = vec![false; crossing.len()];
        for &i in &boundary_members {
            open[i] = true;
        }
        let mut out: Vec<SoupContour> = groups
            .into_values()
            .map(|members| {
                let mut members = members;
                members.sort_by_key(|&i| crossing[i]);
                SoupContour {
                    closed: !members.iter().any(|&i| open[i]),
                    segments: members.iter().map(|&i| segs[i].0.clone()).collect(),
                    other: members.iter().map(|&i| segs[i].1.clone()).collect(),
                    triangles: members.iter().map(|&i| crossing[i]).collect(),
                }
            })
            .collect();
        out.sort_by_key(|c| c.triangles[0]);
        Ok(out)
    }
}

/// Components of `f⁻¹(l)` for one field.
pub fn contours_at(mesh: &SimplicialMesh, field: Field, l: &Rational, mode: BoundaryMode) -> Result<Vec<SoupContour>, OracleError> {
    LevelIndex::new(mesh, field, mode).contours_at(l)
}

/// Even-odd count of soup segments crossed by the ray from `p` towards +x.
fn soup_inside(c: &SoupContour, p: &RPoint) -> bool {
    let mut inside = false;
    for (a, b) in &c.segments {
        let (ay, by) = (qcmp(&a.y, &p.y).is_gt(), qcmp(&b.y, &p.y).is_gt());
        if ay != by {
            if qcmp(&a.x, &p.x).is_lt() && qcmp(&b.x, &p.x).is_lt() {
                continue;
            }
            let want = if by { Ordering::Greater } else { Ordering::Less };
            if orient(a, b, p) == want {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn pair_relation(c1: &SoupContour, c2: &SoupContour) -> Relation {
    // Shared triangles are the only place two level segments can meet.
    let (mut i, mut j) = (0, 0);
    while i < c1.triangles.len() && j < c2.triangles.len() {
        match c1.triangles[i].cmp(&c2.triangles[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let (a, b) = &c1.segments[i];
                let (c, d) = &c2.segments[j];
                if segments_touch(a, b, c, d) {
                    return Relation::Intersecting;
                }
                i += 1;
                j += 1;
            }
        }
    }
    if !c1.closed || !c2.closed {
        return Relation::UndeterminedBoundary;
    }
    let p1 = &c1.segments[0].0;
    let p2 = &c2.segments[0].0;
    debug_assert!(!c2.segments.iter().any(|(a, b)| on_segment(a, b, p1)));
    match (soup_inside(c2, p1), soup_inside(c1, p2)) {
        (true, false) => Relation::FirstInsideSecond,
        (false, true) => Relation::SecondInsideFirst,
        _ => Relation::Disjoint,
    }
}

/// Grid sampling parameters for [`empirical_cells`].
#[derive(Debug, Clone)]
pub struct SamplePlan {
    pub resolution: usize,
    pub seed: u64,
    /// Minimum distance from any vertex or node value.
    pub margin: Rational,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self { resolution: 32, seed: 7, margin: ratio(1, 1_000_000_000) }
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub i: usize,
    pub j: usize,
    pub point: RPoint,
    pub relation: Relation,
}

#[derive(Debug, Clone)]
pub struct EmpiricalRectangle {
    pub e1: usize,
    pub e2: usize,
    pub samples: Vec<Sample>,
    /// Sample indices per cluster of non-intersecting samples.
    pub clusters: Vec<Vec<usize>>,
    /// Samples where the contour attribution to the arc was not unique.
    pub attribution_failures: usize,
}

/// Grid coordinates strictly inside `(lo, hi)`, jittered and kept clear
/// of forbidden values. Besides `n` uniform levels, levels at relative
/// distances 2^-6, 2^-8, ... from each end resolve the slivers that form
/// where the projected Reeb region pinches against a side.
fn axis(lo: &Rational, hi: &Rational, n: usize, rng: &mut ChaCha8Rng, forbidden: &[Rational], margin: &Rational) -> Vec<Rational> {
    let mut ts: Vec<Rational> = (0..n)
        .map(|i| {
            let jitter = ratio(rng.gen_range(-256..=256), 1024);
            (int(i as i64) + ratio(1, 2) + jitter) / int(n as i64)
        })
        .collect();
    for k in (6..=20).step_by(2) {
        let t = ratio(3, 2) / num_traits::pow(int(2), k);
        ts.push(int(1) - &t);
        ts.push(t);
    }
    let mut out: Vec<Rational> = ts
        .into_iter()
        .map(|t| {
            let mut v = lo + (hi - lo) * t;
            nudge(&mut v, forbidden, margin);
            v
        })
        .filter(|v| lo < v && v < hi)
        .collect();
    out.sort();
    out.dedup();
    out
}

fn nudge(v: &mut Rational, forbidden: &[Rational], margin: &Rational) {
    for _ in 0..8 {
        let k = forbidden.partition_point(|f| f < v);
        let close = [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter_map(|i| forbidden.get(i))
            .find(|f| num_traits::Signed::abs(&(&*v - *f)) < *margin)
            .cloned();
        match close {
            Some(f) => *v = f + margin * int(2),
            None => return,
        }
    }
}

/// The contour of `arc` among the level-set components, if unique.
fn attributed(contours: Vec<SoupContour>, arc_simplices: &[usize]) -> Option<SoupContour> {
    let mut hits = contours.into_iter().filter(|c| c.triangles.iter().any(|t| arc_simplices.binary_search(t).is_ok()));
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

/// Grid levels of one arc with their attributed contours.
struct ArcLevels {
    levels: Vec<Rational>,
    contours: Vec<Option<SoupContour>>,
    /// For each simplex of the arc, whether its level segments belong to
    /// the arc. Inside the arc's open interval this does not depend on the
    /// level: the component through a moving level segment only changes at
    /// critical values of that component.
    held: Vec<bool>,
}

impl ArcLevels {
    fn new(index: &LevelIndex, g: &ReebGraph, arc: usize, plan: &SamplePlan, forbidden: &[Rational]) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ ((g.field.number() as u64) << 48) ^ arc as u64);
        let (lo, hi) = g.interval(arc);
        let levels = axis(lo, hi, plan.resolution, &mut rng, forbidden, &plan.margin);
        let simplices = &g.arcs[&arc].simplices;
        let at = |l: &Rational| attributed(index.contours_at(l).ok()?, simplices);
        let contours: Vec<Option<SoupContour>> = levels.iter().map(at).collect();
        let mesh = index.mesh;
        let spans: Vec<(Rational, Rational)> = simplices
            .iter()
            .map(|&s| {
                let vals = mesh.simplices()[s].iter().map(|&v| mesh.value(g.field, v));
                let smin = vals.clone().min().unwrap();
                let smax = vals.max().unwrap();
                (std::cmp::max(smin, lo).clone(), std::cmp::min(smax, hi).clone())
            })
            .collect();
        let mut held = vec![None; simplices.len()];
        let mut pending = Vec::new();
        for (k, (a, b)) in spans.iter().enumerate() {
            if a >= b {
                held[k] = Some(false);
                continue;
            }
            let first = levels.partition_point(|l| l <= a);
            match (first..levels.len()).take_while(|&j| &levels[j] < b).find_map(|j| contours[j].as_ref()) {
                Some(c) => held[k] = Some(c.triangles.binary_search(&simplices[k]).is_ok()),
                None => pending.push(k),
            }
        }
        // Stab the remaining open spans with as few extra levels as possible.
        pending.sort_by(|&x, &y| spans[x].1.cmp(&spans[y].1));
        let mut k = 0;
        while k < pending.len() {
            let end = &spans[pending[k]].1;
            let group: Vec<usize> = pending[k..].iter().copied().take_while(|&p| &spans[p].0 < end).collect();
            let start = group.iter().map(|&p| &spans[p].0).max().unwrap();
            let mut m = (start + end) / int(2);
            nudge(&mut m, forbidden, &((end - start) / int(8)).min(plan.margin.clone()));
            let c = at(&m);
            for &p in &group {
                // An untestable level counts as meeting.
                held[p] = Some(c.as_ref().map_or(true, |c| c.triangles.binary_search(&simplices[p]).is_ok()));
            }
            k += group.len();
        }
        Self { levels, contours, held: held.into_iter().map(|h| h.unwrap_or(true)).collect() }
    }
}

fn forbidden_values(mesh: &SimplicialMesh, g: &ReebGraph) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..mesh.vertices().len()).map(|i| mesh.value(g.field, i).clone()).collect();
    v.extend(g.nodes.values().map(|n| n.value.clone()));
    v.sort();
    v.dedup();
    v
}

fn relation_of(a: &Option<SoupContour>, b: &Option<SoupContour>) -> Option<Relation> {
    Some(pair_relation(a.as_ref()?, b.as_ref()?))
}

/// Values of the other field where `c` meets the contours of `arc`,
/// as closed intervals.
fn slice(c: &SoupContour, arc: usize, g: &ReebGraph, levels: &ArcLevels) -> Vec<(Rational, Rational)> {
    let (y0, y1) = g.interval(arc);
    let simplices = &g.arcs[&arc].simplices;
    let mut out = Vec::new();
    for (k, s) in c.triangles.iter().enumerate() {
        match simplices.binary_search(s) {
            Ok(p) if levels.held[p] => {}
            _ => continue,
        }
        let (u, w) = &c.other[k];
        let (lo, hi) = if u <= w { (u, w) } else { (w, u) };
        let lo = std::cmp::max(lo, y0);
        let hi = std::cmp::min(hi, y1);
        if lo > hi || lo == y1 || hi == y0 {
            continue;
        }
        out.push((lo.clone(), hi.clone()));
    }
    out
}

fn meets(intervals: &[(Rational, Rational)], a: &Rational, b: &Rational) -> bool {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    intervals.iter().any(|(lo, hi)| lo <= b && a <= hi)
}

/// Samples every rectangle on a jittered grid and clusters the samples
/// whose contour pair does not intersect. Grid neighbours are joined when
/// no intersecting pair lies on the straight step between them.
pub fn empirical_cells(
    mesh: &SimplicialMesh,
    g1: &ReebGraph,
    g2: &ReebGraph,
    plan: &SamplePlan,
    mode: BoundaryMode,
) -> Vec<EmpiricalRectangle> {
    let f1 = forbidden_values(mesh, g1);
    let f2 = forbidden_values(mesh, g2);
    let i1 = LevelIndex::new(mesh, Field::First, mode);
    let i2 = LevelIndex::new(mesh, Field::Second, mode);
    let levels = |index: &LevelIndex, g: &ReebGraph, forbidden: &[Rational]| -> BTreeMap<usize, ArcLevels> {
        let arcs: Vec<usize> = g
            .arcs
            .keys()
            .copied()
            .filter(|&a| {
                let (lo, hi) = g.interval(a);
                lo < hi
            })
            .collect();
        arcs.par_iter().map(|&a| (a, ArcLevels::new(index, g, a, plan, forbidden))).collect()
    };
    let l1 = levels(&i1, g1, &f1);
    let l2 = levels(&i2, g2, &f2);
    let pairs: Vec<(usize, usize)> = l1.keys().flat_map(|&a| l2.keys().map(move |&b| (a, b))).collect();
    pairs
        .par_iter()
        .map(|&(e1, e2)| {
            let (a, b) = (&l1[&e1], &l2[&e2]);
            let (nx, ny) = (a.levels.len(), b.levels.len());
            let mut samples = Vec::with_capacity(nx * ny);
            let mut failures = 0;
            for j in 0..ny {
                for i in 0..nx {
                    let point = RPoint::new(a.levels[i].clone(), b.levels[j].clone());
                    let relation = relation_of(&a.contours[i], &b.contours[j]).unwrap_or_else(|| {
                        failures += 1;
                        Relation::Intersecting
                    });
                    samples.push(Sample { i, j, point, relation });
                }
            }
            let columns: Vec<_> = a
                .contours
                .iter()
                .map(|c| c.as_ref().map(|c| slice(c, e2, g2, b)))
                .collect();
            let rows: Vec<_> = b
                .contours
                .iter()
                .map(|c| c.as_ref().map(|c| slice(c, e1, g1, a)))
                .collect();
            let free = |s: &Sample| s.relation != Relation::Intersecting;
            let mut uf = UnionFind::new(samples.len());
            for j in 0..ny {
                for i in 0..nx {
                    let k = j * nx + i;
                    if i + 1 < nx && free(&samples[k]) && free(&samples[k + 1]) {
                        if matches!(&rows[j], Some(r) if !meets(r, &a.levels[i], &a.levels[i + 1])) {
                            uf.union(k, k + 1);
                        }
                    }
                    if j + 1 < ny && free(&samples[k]) && free(&samples[k + nx]) {
                        if matches!(&columns[i], Some(c) if !meets(c, &b.levels[j], &b.levels[j + 1])) {
                            uf.union(k, k + nx);
                        }
                    }
                }
            }
            let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (k, s) in samples.iter().enumerate() {
                if free(s) {
                    clusters.entry(uf.find(k)).or_default().push(k);
                }
            }
            EmpiricalRectangle { e1, e2, samples, clusters: clusters.into_values().collect(), attribution_failures: failures }
        })
        .collect()
}

/// Differences between the computed complement and the sampled one.
pub fn compare(cg: &ComplementGraph, empirical: &[EmpiricalRectangle]) -> Vec<String> {
    let mut issues = Vec::new();
    for er in empirical {
        let Some(rect) = cg.rectangle(er.e1, er.e2) else {
            issues.push(format!("rectangle {}x{} missing", er.e1, er.e2));
            continue;
        };
        if er.attribution_failures > 0 {
            issues.push(format!("rectangle {}x{}: {} samples without a unique contour", er.e1, er.e2, er.attribution_failures));
        }
        let cells: Vec<_> = cg.cells_of(er.e1, er.e2).collect();
        if er.clusters.len() != cells.len() {
            issues.push(format!("rectangle {}x{}: {} clusters, {} cells", er.e1, er.e2, er.clusters.len(), cells.len()));
        }
        for s in &er.samples {
            let in_reeb = rect.reeb.contains(&s.point);
            if in_reeb != (s.relation == Relation::Intersecting) {
                issues.push(format!(
                    "rectangle {}x{}: sample ({}, {}) is {} but relation is {}",
                    er.e1,
                    er.e2,
                    to_literal(&s.point.x),
                    to_literal(&s.point.y),
                    if in_reeb { "in the Reeb image" } else { "outside it" },
                    s.relation.as_str()
                ));
            }
        }
        for (k, cluster) in er.clusters.iter().enumerate() {
            let mut owners: Vec<usize> = cluster
                .iter()
                .filter_map(|&i| cells.iter().position(|c| c.face.contains(&er.samples[i].point)))
                .collect();
            owners.sort_unstable();
            owners.dedup();
            if owners.len() != 1 {
                issues.push(format!("rectangle {}x{}: cluster {k} spans {} cells", er.e1, er.e2, owners.len()));
                continue;
            }
            let cell = cells[owners[0]];
            for &i in cluster {
                let rel = er.samples[i].relation;
                if rel == Relation::UndeterminedBoundary {
                    continue;
                }
                if cell.label.map(|l| l.as_str()) != Some(rel.as_str()) {
                    issues.push(format!(
                        "cell {}: label {} but sample ({}, {}) is {}",
                        cell.id,
                        cell.label.map_or("none", |l| l.as_str()),
                        to_literal(&er.samples[i].point.x),
                        to_literal(&er.samples[i].point.y),
                        rel.as_str()
                    ));
                    break;
                }
            }
        }
    }
    issues
}

/// Sample dump for debugging: `e1,e2,i,j,l1,l2,relation`.
pub fn samples_csv(empirical: &[EmpiricalRectangle]) -> String {
    let mut out = String::from("e1,e2,i,j,l1,l2,relation\n");
    for er in empirical {
        for s in &er.samples {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                er.e1,
                er.e2,
                s.i,
                s.j,
                to_literal(&s.point.x),
                to_literal(&s.point.y),
                s.relation.as_str()
            );
        }
    }
    out
}

/// A smooth random field pair on a grid over `[-1, 1]²`, quantised to four
/// decimals. Boundary vertices share one value above every interior value
/// so that every contour is closed.
pub fn random_field_pair(seed: u64, cells: usize) -> Result<SimplicialMesh, MeshError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64, f64, f64)> {
        let k = rng.gen_range(1..=3);
        (0..k)
            .map(|_| {
                let amp = rng.gen_range(0.3..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                (rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6), rng.gen_range(0.2..0.5), amp)
            })
            .collect()
    };
    let b1 = bumps(&mut rng);
    let b2 = bumps(&mut rng);
    let eval = |bs: &[(f64, f64, f64, f64)], x: f64, y: f64| -> f64 {
        let bowl = 0.5 * (x * x + y * y);
        bowl + bs.iter().map(|&(cx, cy, s, a)| a * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * s * s)).exp()).sum::<f64>()
    };
    let extent = int(1);
    let mut mesh = grid_mesh(&extent, cells, |x, y| {
        let (xf, yf) = (crate::geom::rational::to_f64(x), crate::geom::rational::to_f64(y));
        [from_f64_rounded(eval(&b1, xf, yf), 4), from_f64_rounded(eval(&b2, xf, yf), 4)]
    })?;
    let top = |k: usize| {
        let m = (0..mesh.vertices().len())
            .filter(|&v| !mesh.topology().boundary_vertex[v])
            .map(|v| mesh.vertices()[v].values[k].clone())
            .max()
            .unwrap_or_else(|| int(0));
        m + int(1)
    };
    let (t1, t2) = (top(0), top(1));
    let mut vertices = mesh.vertices().to_vec();
    for (v, vx) in vertices.iter_mut().enumerate() {
        if mesh.topology().boundary_vertex[v] {
            vx.values = [t1.clone(), t2.clone()];
        }
    }
    mesh = SimplicialMesh::new(2, vertices, mesh.simplices().to_vec())?;
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_builtin, BuiltinName, BuiltinSpec, VertexOrder};
    use crate::reeb::compute_reeb_graph;

    #[test]
    fn twin_basin_counts() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2F2, extent: int(3), resolution: 12 }).unwrap();
        let c = contours_at(&m, Field::First, &(ratio(1, 2) + ratio(1, 1000)), BoundaryMode::Collapse).unwrap();
        assert_eq!(c.len(), 2);
        let c = contours_at(&m, Field::First, &(ratio(3, 2) + ratio(1, 1000)), BoundaryMode::Collapse).unwrap();
        assert_eq!(c.len(), 1);
        assert!(contours_at(&m, Field::First, &int(1), BoundaryMode::Collapse).is_err());
    }

    #[test]
    fn diamond_single_contour_and_concentric_relation() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::DiamondPair, extent: int(3), resolution: 12 }).unwrap();
        for l in [ratio(3, 10), ratio(13, 10), ratio(47, 10)] {
            assert_eq!(contours_at(&m, Field::First, &l, BoundaryMode::Collapse).unwrap().len(), 1);
        }
        let outer = &contours_at(&m, Field::First, &ratio(13, 10), BoundaryMode::Collapse).unwrap()[0];
        let inner = &contours_at(&m, Field::Second, &ratio(7, 10), BoundaryMode::Collapse).unwrap()[0];
        assert_eq!(pair_relation(outer, inner), Relation::SecondInsideFirst);
        assert_eq!(pair_relation(inner, outer), Relation::FirstInsideSecond);
    }

    #[test]
    fn crossing_contours_intersect() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 12 }).unwrap();
        let a = &contours_at(&m, Field::First, &ratio(13, 10), BoundaryMode::Collapse).unwrap()[0];
        let b = &contours_at(&m, Field::Second, &ratio(13, 10), BoundaryMode::Collapse).unwrap()[0];
        assert_eq!(pair_relation(a, b), Relation::Intersecting);
    }

    #[test]
    fn contour_count_matches_arcs() {
        let m = random_field_pair(3, 12).unwrap();
        let g = compute_reeb_graph(&m, &VertexOrder::new(&m, Field::First));
        let idx = LevelIndex::new(&m, Field::First, BoundaryMode::Collapse);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (lo, hi) = (g.nodes.values().map(|n| n.value.clone()).min().unwrap(), g.nodes.values().map(|n| n.value.clone()).max().unwrap());
        for _ in 0..100 {
            let mut l = &lo + (&hi - &lo) * ratio(rng.gen_range(1..100_000), 100_000);
            nudge(&mut l, &idx.values, &ratio(1, 1_000_000_000));
            let n = idx.contours_at(&l).unwrap().len();
            assert_eq!(n, g.arcs_at(&l).len(), "at {l}");
        }
    }

    #[test]
    fn random_pairs_are_closed_everywhere() {
        let m = random_field_pair(5, 10).unwrap();
        assert_eq!(m.simplices().len(), 200);
        let idx = LevelIndex::new(&m, Field::Second, BoundaryMode::Collapse);
        let c = idx.contours_at(&ratio(1, 3)).unwrap();
        assert!(c.iter().all(|c| c.closed));
    }
}
