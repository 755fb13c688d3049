//! Reeb graphs of PL scalar fields by a vertex sweep.
//!
//! The sweep keeps the set of crossing edges (lower endpoint already
//! swept, upper endpoint not) labelled by the arc whose contour they
//! belong to. At each vertex the contours touching it are re-flooded
//! through shared simplices and compared with the labels they carried.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::geom::rational::{to_literal, Rational};
use crate::mesh::{Field, SimplicialMesh, VertexOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeKind {
    Min,
    Max,
    Merge,
    Split,
    BoundaryEvent,
    Subdivision,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Min => "MIN",
            NodeKind::Max => "MAX",
            NodeKind::Merge => "MERGE",
            NodeKind::Split => "SPLIT",
            NodeKind::BoundaryEvent => "BOUNDARY_EVENT",
            NodeKind::Subdivision => "SUBDIVISION",
        }
    }
}

/// How contours that reach the domain boundary are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// All boundary-touching pieces of a level set count as one contour,
    /// so truncating an unbounded domain introduces no events.
    #[default]
    Collapse,
    /// True components; opening or closing at the boundary emits a
    /// `BoundaryEvent` node.
    Track,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: usize,
    pub value: Rational,
    pub vertex: Option<usize>,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub lower: usize,
    pub upper: usize,
    /// Sorted full-simplex ids.
    pub simplices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexImage {
    Node(usize),
    Arc(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReebError {
    #[error("arc {0} does not exist")]
    NoSuchArc(usize),
    #[error("value {value} is not strictly inside arc {arc} ({lo}, {hi})")]
    OutsideArc { arc: usize, value: String, lo: String, hi: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebGraph {
    pub field: Field,
    pub nodes: BTreeMap<usize, Node>,
    pub arcs: BTreeMap<usize, Arc>,
    /// Image of each mesh vertex; `None` for vertices in no simplex.
    pub vertex_map: Vec<Option<VertexImage>>,
}

impl ReebGraph {
    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[&id]
    }

    pub fn arc(&self, id: usize) -> Option<&Arc> {
        self.arcs.get(&id)
    }

    /// Value interval `[lo, hi]` of an arc.
    pub fn interval(&self, arc: usize) -> (&Rational, &Rational) {
        let a = &self.arcs[&arc];
        (&self.nodes[&a.lower].value, &self.nodes[&a.upper].value)
    }

    pub fn incident_arcs(&self, node: usize) -> Vec<usize> {
        self.arcs.values().filter(|a| a.lower == node || a.upper == node).map(|a| a.id).collect()
    }

    pub fn arcs_below(&self, node: usize) -> Vec<usize> {
        self.arcs.values().filter(|a| a.upper == node).map(|a| a.id).collect()
    }

    pub fn arcs_above(&self, node: usize) -> Vec<usize> {
        self.arcs.values().filter(|a| a.lower == node).map(|a| a.id).collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.incident_arcs(node).len()
    }

    /// Arcs whose open value interval contains `value`.
    pub fn arcs_at(&self, value: &Rational) -> Vec<usize> {
        self.arcs
            .keys()
            .copied()
            .filter(|&a| {
                let (lo, hi) = self.interval(a);
                lo < value && value < hi
            })
            .collect()
    }

    pub fn next_arc_id(&self) -> usize {
        self.arcs.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn next_node_id(&self) -> usize {
        self.nodes.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.nodes.values().filter(|n| n.kind == kind).count()
    }

    /// Arcs a full-simplex is assigned to.
    pub fn arcs_of_simplex(&self, simplex: usize) -> Vec<usize> {
        self.arcs.values().filter(|a| a.simplices.binary_search(&simplex).is_ok()).map(|a| a.id).collect()
    }

    /// Replaces `arc` by two arcs meeting at a new subdivision node.
    pub fn subdivide_arc(&mut self, mesh: &SimplicialMesh, arc: usize, value: &Rational) -> Result<(usize, usize), ReebError> {
        let a = self.arcs.get(&arc).cloned().ok_or(ReebError::NoSuchArc(arc))?;
        let (lo, hi) = self.interval(arc);
        if !(lo < value && value < hi) {
            return Err(ReebError::OutsideArc {
                arc,
                value: to_literal(value),
                lo: to_literal(lo),
                hi: to_literal(hi),
            });
        }
        let node = self.next_node_id();
        self.nodes.insert(node, Node { id: node, value: value.clone(), vertex: None, kind: NodeKind::Subdivision });
        let (mut below, mut above) = (Vec::new(), Vec::new());
        for &s in &a.simplices {
            let (smin, smax) = simplex_span(mesh, self.field, s);
            if &smin < value {
                below.push(s);
            }
            if &smax > value {
                above.push(s);
            }
        }
        self.arcs.remove(&arc);
        let lower_id = self.next_arc_id();
        self.arcs.insert(lower_id, Arc { id: lower_id, lower: a.lower, upper: node, simplices: below });
        let upper_id = lower_id + 1;
        self.arcs.insert(upper_id, Arc { id: upper_id, lower: node, upper: a.upper, simplices: above });
        for img in self.vertex_map.iter_mut().flatten() {
            if *img == VertexImage::Arc(arc) {
                *img = VertexImage::Arc(lower_id);
            }
        }
        for (v, img) in self.vertex_map.iter_mut().enumerate() {
            if *img == Some(VertexImage::Arc(lower_id)) && mesh.value(self.field, v) > value {
                *img = Some(VertexImage::Arc(upper_id));
            }
        }
        Ok((lower_id, upper_id))
    }

    /// DOT rendering: nodes `id:value:kind`, arcs labelled by simplex count.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for n in self.nodes.values() {
            let _ = writeln!(out, "  n{} [label=\"{}:{}:{}\"];", n.id, n.id, to_literal(&n.value), n.kind.as_str());
        }
        for a in self.arcs.values() {
            let _ = writeln!(out, "  n{} -- n{} [label=\"a{} ({})\"];", a.lower, a.upper, a.id, a.simplices.len());
        }
        out.push_str("}\n");
        out
    }

    /// Structural checks; returns the first violation found.
    pub fn check(&self, mesh: &SimplicialMesh) -> Result<(), String> {
        for a in self.arcs.values() {
            let (l, u) = (&self.nodes[&a.lower], &self.nodes[&a.upper]);
            let ordered = match (l.vertex, u.vertex) {
                (Some(x), Some(y)) => (&l.value, x) < (&u.value, y),
                _ => l.value < u.value,
            };
            if !ordered {
                return Err(format!("arc {} is not increasing", a.id));
            }
        }
        for n in self.nodes.values() {
            let deg = self.degree(n.id);
            let ok = match n.kind {
                NodeKind::Min => !self.arcs_above(n.id).is_empty() && self.arcs_below(n.id).is_empty(),
                NodeKind::Max => self.arcs_above(n.id).is_empty() && !self.arcs_below(n.id).is_empty(),
                NodeKind::Merge => self.arcs_below(n.id).len() >= 2,
                NodeKind::Split => self.arcs_above(n.id).len() >= 2,
                NodeKind::BoundaryEvent | NodeKind::Subdivision => deg == 2,
            };
            if !ok {
                return Err(format!("node {} of kind {} has degree {deg}", n.id, n.kind.as_str()));
            }
        }
        let mut covered = vec![false; mesh.simplices().len()];
        for a in self.arcs.values() {
            for &s in &a.simplices {
                covered[s] = true;
            }
        }
        if let Some(s) = covered.iter().position(|c| !c) {
            return Err(format!("simplex {s} is assigned to no arc"));
        }
        let per_simplex = self.simplex_arcs(mesh.simplices().len());
        for (s, arcs) in per_simplex.iter().enumerate() {
            if !self.is_monotone_path(arcs) {
                return Err(format!("arcs of simplex {s} do not form a monotone path"));
            }
        }
        Ok(())
    }

    /// Inverse of the arc assignment, one sorted list per simplex.
    pub fn simplex_arcs(&self, nsimplices: usize) -> Vec<Vec<usize>> {
        let mut per = vec![Vec::new(); nsimplices];
        for a in self.arcs.values() {
            for &s in &a.simplices {
                per[s].push(a.id);
            }
        }
        per
    }

    /// Whether the arcs can be ordered into a path where each arc's upper
    /// node is the next arc's lower node.
    pub fn is_monotone_path(&self, arcs: &[usize]) -> bool {
        if arcs.len() <= 1 {
            return true;
        }
        let set: BTreeSet<usize> = arcs.iter().copied().collect();
        let starts: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| self.arcs[&b].upper == self.arcs[&a].lower))
            .collect();
        if starts.len() != 1 {
            return false;
        }
        let mut cur = starts[0];
        let mut seen = 1;
        loop {
            let next: Vec<usize> = set.iter().copied().filter(|&b| self.arcs[&b].lower == self.arcs[&cur].upper).collect();
            match next.as_slice() {
                [] => break,
                [n] => {
                    cur = *n;
                    seen += 1;
                    if seen > set.len() {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        seen == set.len()
    }
}

/// Numeric value span of a full-simplex.
pub fn simplex_span(mesh: &SimplicialMesh, field: Field, s: usize) -> (Rational, Rational) {
    let vals = mesh.simplices()[s].iter().map(|&v| mesh.value(field, v));
    let mut lo = None::<&Rational>;
    let mut hi = None::<&Rational>;
    for x in vals {
        if lo.is_none_or(|l| x < l) {
            lo = Some(x);
        }
        if hi.is_none_or(|h| x > h) {
            hi = Some(x);
        }
    }
    (lo.unwrap().clone(), hi.unwrap().clone())
}

pub fn compute_reeb_graph(mesh: &SimplicialMesh, order: &VertexOrder) -> ReebGraph {
    compute_reeb_graph_with(mesh, order, BoundaryMode::default())
}

pub fn compute_reeb_graph_with(mesh: &SimplicialMesh, order: &VertexOrder, mode: BoundaryMode) -> ReebGraph {
    Sweep::new(mesh, order, mode).run()
}

/// Recomputes the simplex assignment of a graph produced by the sweep.
/// Subdivided or simplified graphs should be rebuilt from the sweep
/// output with the same operations.
pub fn assign_simplices(mesh: &SimplicialMesh, graph: &ReebGraph, mode: BoundaryMode) -> ReebGraph {
    let order = VertexOrder::new(mesh, graph.field);
    let fresh = compute_reeb_graph_with(mesh, &order, mode);
    let mut out = graph.clone();
    for (id, arc) in out.arcs.iter_mut() {
        if let Some(f) = fresh.arcs.get(id) {
            if f.lower == arc.lower && f.upper == arc.upper {
                arc.simplices = f.simplices.clone();
            }
        }
    }
    out
}

const NONE: usize = usize::MAX;

struct Sweep<'a> {
    mesh: &'a SimplicialMesh,
    order: &'a VertexOrder,
    mode: BoundaryMode,
    active: Vec<bool>,
    label: Vec<usize>,
    members: BTreeMap<usize, Vec<usize>>,
    closed: BTreeMap<usize, bool>,
    active_boundary: BTreeSet<usize>,
    visited: Vec<u32>,
    stamp: u32,
    graph: ReebGraph,
    assigned: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Sweep<'a> {
    fn new(mesh: &'a SimplicialMesh, order: &'a VertexOrder, mode: BoundaryMode) -> Self {
        let ne = mesh.topology().edges.len();
        Self {
            mesh,
            order,
            mode,
            active: vec![false; ne],
            label: vec![NONE; ne],
            members: BTreeMap::new(),
            closed: BTreeMap::new(),
            active_boundary: BTreeSet::new(),
            visited: vec![0; ne],
            stamp: 0,
            graph: ReebGraph {
                field: order.field(),
                nodes: BTreeMap::new(),
                arcs: BTreeMap::new(),
                vertex_map: vec![None; mesh.vertices().len()],
            },
            assigned: BTreeMap::new(),
        }
    }

    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.mesh.topology().edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn set_active(&mut self, e: usize, on: bool) {
        self.active[e] = on;
        if self.mesh.topology().boundary_edge[e] {
            if on {
                self.active_boundary.insert(e);
            } else {
                self.active_boundary.remove(&e);
            }
        }
        if !on {
            self.label[e] = NONE;
        }
    }

    /// Connected components of active edges reachable from `seeds`.
    fn flood(&mut self, seeds: &[usize]) -> Vec<Vec<usize>> {
        self.stamp += 1;
        let stamp = self.stamp;
        let topo = self.mesh.topology();
        let mut comps = Vec::new();
        for &seed in seeds {
            if !self.active[seed] || self.visited[seed] == stamp {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([seed]);
            self.visited[seed] = stamp;
            let mut glued = false;
            while let Some(e) = queue.pop_front() {
                comp.push(e);
                if self.mode == BoundaryMode::Collapse && !glued && topo.boundary_edge[e] {
                    glued = true;
                    for &b in &self.active_boundary {
                        if self.visited[b] != stamp {
                            self.visited[b] = stamp;
                            queue.push_back(b);
                        }
                    }
                }
                for &s in &topo.edge_simplices[e] {
                    for &f in &topo.simplex_edges[s] {
                        if self.active[f] && self.visited[f] != stamp {
                            self.visited[f] = stamp;
                            queue.push_back(f);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    fn new_node(&mut self, v: usize, kind: NodeKind) -> usize {
        let id = self.graph.nodes.len();
        let value = self.mesh.value(self.order.field(), v).clone();
        self.graph.nodes.insert(id, Node { id, value, vertex: Some(v), kind });
        id
    }

    fn open_arc(&mut self, lower: usize) -> usize {
        let id = self.graph.arcs.len();
        self.graph.arcs.insert(id, Arc { id, lower, upper: NONE, simplices: Vec::new() });
        id
    }

    fn take_component(&mut self, arc: usize, comp: Vec<usize>) {
        let topo = self.mesh.topology();
        let rec = self.assigned.entry(arc).or_default();
        let mut closed = true;
        for &e in &comp {
            self.label[e] = arc;
            rec.extend_from_slice(&topo.edge_simplices[e]);
            closed &= !topo.boundary_edge[e];
        }
        self.closed.insert(arc, closed);
        self.members.insert(arc, comp);
    }

    fn run(mut self) -> ReebGraph {
        let topo = self.mesh.topology();
        let sorted = self.order.sorted().to_vec();
        for v in sorted {
            if topo.vertex_edges[v].is_empty() {
                continue;
            }
            let rv = self.order.rank(v);
            let mut involved = BTreeSet::new();
            let mut seeds = Vec::new();
            for &e in &topo.vertex_edges[v] {
                let w = self.other(e, v);
                if self.order.rank(w) < rv {
                    if self.label[e] != NONE {
                        involved.insert(self.label[e]);
                    }
                    self.set_active(e, false);
                } else {
                    self.set_active(e, true);
                    seeds.push(e);
                }
            }
            for l in &involved {
                seeds.extend(self.members[l].iter().copied());
            }
            seeds.sort_unstable();
            seeds.dedup();
            let comps = self.flood(&seeds);
            for c in &comps {
                for &e in c {
                    if self.label[e] != NONE {
                        involved.insert(self.label[e]);
                    }
                }
            }
            let involved: Vec<usize> = involved.into_iter().collect();
            for l in &involved {
                self.members.remove(l);
            }
            let kind = match (involved.len(), comps.len()) {
                (1, 1) => {
                    let arc = involved[0];
                    let was_closed = self.closed[&arc];
                    let comp = comps.into_iter().next().unwrap();
                    let now_closed = comp.iter().all(|&e| !topo.boundary_edge[e]);
                    if self.mode == BoundaryMode::Track && was_closed != now_closed {
                        let node = self.new_node(v, NodeKind::BoundaryEvent);
                        self.graph.arcs.get_mut(&arc).unwrap().upper = node;
                        let next = self.open_arc(node);
                        self.take_component(next, comp);
                        self.graph.vertex_map[v] = Some(VertexImage::Node(node));
                    } else {
                        self.take_component(arc, comp);
                        self.graph.vertex_map[v] = Some(VertexImage::Arc(arc));
                    }
                    continue;
                }
                (0, _) => NodeKind::Min,
                (_, 0) => NodeKind::Max,
                (i, c) if i < c => NodeKind::Split,
                _ => NodeKind::Merge,
            };
            let node = self.new_node(v, kind);
            self.graph.vertex_map[v] = Some(VertexImage::Node(node));
            for l in involved {
                self.graph.arcs.get_mut(&l).unwrap().upper = node;
            }
            for comp in comps {
                let arc = self.open_arc(node);
                self.take_component(arc, comp);
            }
        }
        let mut graph = self.graph;
        for (arc, mut list) in self.assigned {
            list.sort_unstable();
            list.dedup();
            graph.arcs.get_mut(&arc).unwrap().simplices = list;
        }
        debug_assert!(graph.arcs.values().all(|a| a.upper != NONE));
        graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::{int, ratio};
    use crate::mesh::{build_builtin, BuiltinName, BuiltinSpec};

    fn builtin(name: BuiltinName, n: usize) -> SimplicialMesh {
        build_builtin(&BuiltinSpec { name, extent: int(3), resolution: n }).unwrap()
    }

    fn graph(mesh: &SimplicialMesh, field: Field) -> ReebGraph {
        compute_reeb_graph(mesh, &VertexOrder::new(mesh, field))
    }

    fn kinds(g: &ReebGraph, kind: NodeKind) -> Vec<Rational> {
        let mut v: Vec<_> = g.nodes.values().filter(|n| n.kind == kind).map(|n| n.value.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn eq1_two_minima_one_merge() {
        let m = builtin(BuiltinName::Eq1, 12);
        let g = graph(&m, Field::First);
        assert_eq!(kinds(&g, NodeKind::Min), vec![int(-1), int(0)]);
        assert_eq!(kinds(&g, NodeKind::Merge), vec![ratio(1, 2)]);
        assert_eq!(g.count_kind(NodeKind::Split), 0);
        assert_eq!(g.arcs.len(), 3);
        g.check(&m).unwrap();
    }

    #[test]
    fn diamond_is_an_interval() {
        let m = builtin(BuiltinName::DiamondPair, 8);
        let g = graph(&m, Field::First);
        assert_eq!(kinds(&g, NodeKind::Min), vec![int(0)]);
        assert_eq!(g.arcs.len(), 1);
        assert_eq!(g.arcs[&0].simplices.len(), m.simplices().len());
        g.check(&m).unwrap();
    }

    #[test]
    fn diamond_tracked_boundary_splits() {
        let m = builtin(BuiltinName::DiamondPair, 8);
        let g = compute_reeb_graph_with(&m, &VertexOrder::new(&m, Field::First), BoundaryMode::Track);
        assert!(g.arcs.len() > 1);
        assert!(g.count_kind(NodeKind::Split) > 0);
    }

    #[test]
    fn twin_basins_make_a_y() {
        let m = builtin(BuiltinName::Eq2F2, 24);
        let g = graph(&m, Field::First);
        assert_eq!(kinds(&g, NodeKind::Min), vec![int(0), int(0)]);
        assert_eq!(kinds(&g, NodeKind::Merge), vec![int(1)]);
        assert_eq!(g.arcs.len(), 3);
        g.check(&m).unwrap();
        // A triangle beside (1, 0) with span inside (0, 1) belongs to the right branch only.
        let right_min = g.nodes.values().find(|n| n.kind == NodeKind::Min && m.vertices()[n.vertex.unwrap()].coords[0] > int(0)).unwrap().id;
        let right_arc = g.arcs_above(right_min)[0];
        let s = (0..m.simplices().len())
            .find(|&s| {
                let (lo, hi) = simplex_span(&m, Field::First, s);
                let c = &m.vertices()[m.simplices()[s][0]].coords;
                lo > int(0) && hi < int(1) && c[0] > int(0)
            })
            .unwrap();
        assert_eq!(g.arcs_of_simplex(s), vec![right_arc]);
    }

    #[test]
    fn node_balance() {
        for name in [BuiltinName::Eq1, BuiltinName::Eq2F2, BuiltinName::DiamondPair] {
            let m = builtin(name, 10);
            let g = graph(&m, Field::First);
            let lhs = g.count_kind(NodeKind::Min) + g.count_kind(NodeKind::Split);
            let rhs = g.count_kind(NodeKind::Max) + g.count_kind(NodeKind::Merge);
            assert_eq!(lhs, rhs, "{name:?}");
        }
    }

    #[test]
    fn subdivide_interval() {
        // Interval graph on [0, 3]: a single strip of triangles.
        let m = builtin(BuiltinName::DiamondPair, 2);
        let mut g = graph(&m, Field::First);
        assert_eq!(g.arcs.len(), 1);
        let (lo, hi) = g.interval(0);
        assert_eq!((lo.clone(), hi.clone()), (int(0), int(6)));
        let total: usize = g.arcs.values().map(|a| a.simplices.len()).sum();
        let (a, b) = g.subdivide_arc(&m, 0, &ratio(3, 2)).unwrap();
        assert_eq!(g.interval(a), (&int(0), &ratio(3, 2)));
        assert_eq!(g.interval(b), (&ratio(3, 2), &int(6)));
        // Every simplex spans [0, 3] or [3, 6]; those touching 0 straddle 3/2.
        for s in 0..m.simplices().len() {
            let (smin, smax) = simplex_span(&m, Field::First, s);
            if smin < ratio(3, 2) && smax > ratio(3, 2) {
                assert_eq!(g.arcs_of_simplex(s), vec![a, b]);
            }
        }
        assert!(g.subdivide_arc(&m, a, &int(2)).is_err());
        let (c, d) = g.subdivide_arc(&m, b, &int(3)).unwrap();
        assert_eq!(g.arcs.len(), 3);
        assert!(g.arcs.values().map(|a| a.simplices.len()).sum::<usize>() >= total);
        assert!(g.is_monotone_path(&[a, c, d]));
        g.check(&m).unwrap();
    }

    #[test]
    fn determinism_and_dot() {
        let m = builtin(BuiltinName::Eq1, 12);
        let g1 = graph(&m, Field::First);
        let g2 = graph(&m, Field::First);
        assert_eq!(g1, g2);
        let dot = g1.to_dot("g1");
        assert!(dot.contains(":-1:MIN"), "{dot}");
        assert!(dot.contains(":0.5:MERGE"), "{dot}");
    }
}
