//! Leaf-arc cancellation on Reeb graphs, and the same cancellation
//! applied directly to a computed complement.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::classify::{classify_complement, ClassifyError};
use crate::complement::{assemble, bounds_of, intersect_sorted, project_with, ComplementGraph, Rectangle};
use crate::geom::rational::int;
use crate::geom::Rational;
use crate::mesh::SimplicialMesh;
use crate::reeb::{NodeKind, ReebGraph, VertexImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImportanceMeasure {
    /// Value span of the arc.
    #[default]
    Persistence,
    /// Number of assigned simplices.
    Size,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimplificationMode {
    /// The removed arc's simplices move to the merged arc.
    #[default]
    Consider,
    /// The removed arc's simplices are dropped.
    Ignore,
}

impl ImportanceMeasure {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Persistence => "persistence",
            Self::Size => "size",
        }
    }
}

impl SimplificationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Consider => "consider",
            Self::Ignore => "ignore",
        }
    }
}

impl std::str::FromStr for ImportanceMeasure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "persistence" => Ok(Self::Persistence),
            "size" => Ok(Self::Size),
            _ => Err(format!("unknown measure `{s}` (expected persistence or size)")),
        }
    }
}

impl std::str::FromStr for SimplificationMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "consider" => Ok(Self::Consider),
            "ignore" => Ok(Self::Ignore),
            _ => Err(format!("unknown mode `{s}` (expected consider or ignore)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Simplification {
    pub measure: ImportanceMeasure,
    pub threshold: Rational,
    pub mode: SimplificationMode,
}

/// One leaf removal: `leaf` disappears and `below`/`above` become `merged`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cancellation {
    pub leaf: usize,
    pub below: usize,
    pub above: usize,
    pub merged: usize,
}

pub fn importance(graph: &ReebGraph, arc: usize, measure: ImportanceMeasure) -> Rational {
    match measure {
        ImportanceMeasure::Persistence => {
            let (lo, hi) = graph.interval(arc);
            hi - lo
        }
        ImportanceMeasure::Size => int(graph.arcs[&arc].simplices.len() as i64),
    }
}

/// The surviving pair `(below, above)` if `arc` can be cancelled.
fn cancellable(graph: &ReebGraph, arc: usize) -> Option<(usize, usize, usize)> {
    let a = &graph.arcs[&arc];
    let (leaf_node, joint) = if graph.degree(a.lower) == 1 {
        (a.lower, a.upper)
    } else if graph.degree(a.upper) == 1 {
        (a.upper, a.lower)
    } else {
        return None;
    };
    if leaf_node == joint || graph.degree(joint) != 3 {
        return None;
    }
    let below: Vec<usize> = graph.arcs_below(joint).into_iter().filter(|&x| x != arc).collect();
    let above: Vec<usize> = graph.arcs_above(joint).into_iter().filter(|&x| x != arc).collect();
    match (below.as_slice(), above.as_slice()) {
        ([b], [u]) if b != u => Some((*b, *u, joint)),
        _ => None,
    }
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Removes `leaf` and fuses `below`/`above` through `joint`; returns the new arc id.
fn cancel(g: &mut ReebGraph, leaf: usize, below: usize, above: usize, joint: usize, mode: SimplificationMode) -> usize {
    let leaf_arc = g.arcs.remove(&leaf).unwrap();
    let leaf_node = if leaf_arc.lower == joint { leaf_arc.upper } else { leaf_arc.lower };
    let b = g.arcs.remove(&below).unwrap();
    let u = g.arcs.remove(&above).unwrap();
    let mut simplices = union_sorted(&b.simplices, &u.simplices);
    if mode == SimplificationMode::Consider {
        simplices = union_sorted(&simplices, &leaf_arc.simplices);
    }
    let merged = g.next_arc_id().max(leaf.max(below).max(above) + 1);
    g.arcs.insert(merged, crate::reeb::Arc { id: merged, lower: b.lower, upper: u.upper, simplices });
    g.nodes.remove(&joint);
    g.nodes.remove(&leaf_node);
    for img in g.vertex_map.iter_mut().flatten() {
        let gone = match *img {
            VertexImage::Arc(x) => x == leaf || x == below || x == above,
            VertexImage::Node(n) => n == joint || n == leaf_node,
        };
        if gone {
            *img = VertexImage::Arc(merged);
        }
    }
    merged
}

/// Simplified graph and the cancellations that produced it, in order.
pub fn simplify_graph_steps(graph: &ReebGraph, s: &Simplification) -> (ReebGraph, Vec<Cancellation>) {
    let mut g = graph.clone();
    let mut steps = Vec::new();
    loop {
        let best = g
            .arcs
            .keys()
            .filter_map(|&a| cancellable(&g, a).map(|c| (importance(&g, a, s.measure), a, c)))
            .filter(|(imp, _, _)| imp < &s.threshold)
            .min_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
        let Some((_, leaf, (below, above, joint))) = best else { break };
        let merged = cancel(&mut g, leaf, below, above, joint, s.mode);
        steps.push(Cancellation { leaf, below, above, merged });
    }
    (g, steps)
}

pub fn simplify_graph(graph: &ReebGraph, s: &Simplification) -> ReebGraph {
    simplify_graph_steps(graph, s).0
}

/// Which graph a complement simplification acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
    Both,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::First => "1",
            Side::Second => "2",
            Side::Both => "both",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" => Ok(Side::First),
            "2" => Ok(Side::Second),
            "both" => Ok(Side::Both),
            _ => Err(format!("unknown side `{s}` (expected 1, 2 or both)")),
        }
    }
}

/// Simplices of `arc` whose values leave the arc's interval.
fn overhang(mesh: &SimplicialMesh, g: &ReebGraph, arc: usize) -> Vec<usize> {
    let (lo, hi) = g.interval(arc);
    g.arcs[&arc]
        .simplices
        .iter()
        .copied()
        .filter(|&t| mesh.simplices()[t].iter().any(|&v| {
            let x = mesh.value(g.field, v);
            x < lo || x > hi
        }))
        .collect()
}

/// Applies the cancellations to the rectangles themselves: rows of the
/// leaf are deleted and the two surviving rows are fused, re-mapping the
/// simplices that the fused arc gains over the two old rows.
pub fn simplify_complement(
    mesh: &SimplicialMesh,
    cg: &ComplementGraph,
    side: Side,
    s: &Simplification,
) -> Result<ComplementGraph, ClassifyError> {
    let sides: &[usize] = match side {
        Side::First => &[0],
        Side::Second => &[1],
        Side::Both => &[0, 1],
    };
    let mut graphs = cg.graphs.clone();
    let mut rects: BTreeMap<(usize, usize), Rectangle> = cg.rectangles.iter().map(|r| ((r.e1, r.e2), r.clone())).collect();
    for &k in sides {
        let (simplified, steps) = simplify_graph_steps(&graphs[k], s);
        let mut g = graphs[k].clone();
        let partner = graphs[1 - k].clone();
        let key = |own: usize, other: usize| if k == 0 { (own, other) } else { (other, own) };
        for step in &steps {
            let leaf = g.arcs[&step.leaf].clone();
            let below = g.arcs[&step.below].clone();
            let above = g.arcs[&step.above].clone();
            let extra: Vec<usize> = match s.mode {
                SimplificationMode::Consider => leaf.simplices.clone(),
                SimplificationMode::Ignore => {
                    intersect_sorted(&leaf.simplices, &union_sorted(&below.simplices, &above.simplices))
                }
            };
            // Parts of simplices outside their old row were clipped away there.
            let extra = union_sorted(&extra, &union_sorted(&overhang(mesh, &g, step.below), &overhang(mesh, &g, step.above)));
            let joint = below.upper;
            let merged = cancel(&mut g, step.leaf, step.below, step.above, joint, s.mode);
            debug_assert_eq!(merged, step.merged);

            let fused: Vec<Rectangle> = partner
                .arcs
                .keys()
                .copied()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&o| {
                    let (g1, g2) = if k == 0 { (&g, &partner) } else { (&partner, &g) };
                    let (m1, m2) = key(step.merged, o);
                    let bounds = bounds_of(g1, g2, m1, m2);
                    let old_b = &rects[&key(step.below, o)];
                    let old_u = &rects[&key(step.above, o)];
                    let remap = intersect_sorted(&extra, &partner.arcs[&o].simplices);
                    let (reeb, complement) = project_with(mesh, &remap, &[&old_b.reeb, &old_u.reeb], &bounds);
                    let common = intersect_sorted(&g1.arcs[&m1].simplices, &g2.arcs[&m2].simplices).len();
                    Rectangle { e1: m1, e2: m2, bounds, reeb, complement, common }
                })
                .collect();
            for o in partner.arcs.keys() {
                for arc in [step.leaf, step.below, step.above] {
                    rects.remove(&key(arc, *o));
                }
            }
            for r in fused {
                rects.insert((r.e1, r.e2), r);
            }
        }
        debug_assert_eq!(g, simplified);
        graphs[k] = simplified;
    }
    let mut out = assemble(mesh, graphs, rects.into_values().collect());
    classify_complement(mesh, &mut out)?;
    Ok(out)
}

/// True if every node kind still matches its degree after simplification.
pub fn kinds_consistent(graph: &ReebGraph) -> bool {
    graph.nodes.values().all(|n| match n.kind {
        NodeKind::Min => graph.arcs_below(n.id).is_empty(),
        NodeKind::Max => graph.arcs_above(n.id).is_empty(),
        _ => true,
    })
}
