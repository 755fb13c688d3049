//! JSON, SVG and DOT artifacts, and a validator that re-reads the JSON.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::InclusionLabel;
use crate::complement::{ComplementGraph, Junction};
use crate::geom::point::ring_area2;
use crate::geom::rational::to_decimal_string;
use crate::geom::svg::{render, Layer};
use crate::geom::{Bounds, Face, PolygonSet, RPoint, Rational};
use crate::mesh::SimplicialMesh;
use crate::reeb::{NodeKind, ReebGraph};
use crate::simplify::{Cancellation, Side, Simplification};

/// Fractional digits kept in the `decimal` field of non-terminating values.
const DECIMAL_DIGITS: usize = 20;

/// A rational as a decimal string plus its exact numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub decimal: String,
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        Self { decimal: to_decimal_string(r, DECIMAL_DIGITS), num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl JsonRational {
    /// The exact value; fails on malformed, unreduced or inconsistent input.
    pub fn value(&self) -> Result<Rational, String> {
        let num: BigInt = self.num.parse().map_err(|_| format!("bad numerator {:?}", self.num))?;
        let den: BigInt = self.den.parse().map_err(|_| format!("bad denominator {:?}", self.den))?;
        if !den.is_positive() {
            return Err(format!("denominator {den} is not positive"));
        }
        if !num.gcd(&den).is_one() && !num.is_zero() || num.is_zero() && !den.is_one() {
            return Err(format!("{num}/{den} is not reduced"));
        }
        let r = Rational::new_raw(num, den);
        if to_decimal_string(&r, DECIMAL_DIGITS) != self.decimal {
            return Err(format!("decimal {} does not match {}/{}", self.decimal, self.num, self.den));
        }
        Ok(r)
    }
}

pub type JsonPoint = [JsonRational; 2];

fn jp(p: &RPoint) -> JsonPoint {
    [(&p.x).into(), (&p.y).into()]
}

fn ring(r: &[RPoint]) -> Vec<JsonPoint> {
    r.iter().map(jp).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub id: usize,
    pub value: JsonRational,
    pub vertex: Option<usize>,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonArc {
    pub id: usize,
    pub lower: usize,
    pub upper: usize,
    pub simplex_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub field: u8,
    pub nodes: Vec<JsonNode>,
    pub arcs: Vec<JsonArc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFace {
    pub outer: Vec<JsonPoint>,
    pub holes: Vec<Vec<JsonPoint>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPolygonSet {
    pub faces: Vec<JsonFace>,
    pub segments: Vec<[JsonPoint; 2]>,
    pub points: Vec<JsonPoint>,
    pub area: JsonRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBounds {
    pub x: [JsonRational; 2],
    pub y: [JsonRational; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRectangle {
    pub e1: usize,
    pub e2: usize,
    pub bounds: JsonBounds,
    pub common_simplices: usize,
    pub reeb: JsonPolygonSet,
    pub cells: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCell {
    pub id: String,
    pub e1: usize,
    pub e2: usize,
    pub index: usize,
    pub outer: Vec<JsonPoint>,
    pub holes: Vec<Vec<JsonPoint>>,
    pub area: JsonRational,
    pub sample: JsonPoint,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonJunction {
    Within,
    Node { field: u8, node: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAdjacency {
    pub a: String,
    pub b: String,
    pub junction: JsonJunction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCancellation {
    pub field: u8,
    pub leaf: usize,
    pub below: usize,
    pub above: usize,
    pub merged: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSimplification {
    pub measure: String,
    pub threshold: JsonRational,
    pub mode: String,
    pub side: String,
    pub cancellations: Vec<JsonCancellation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMesh {
    pub dim: usize,
    pub vertices: usize,
    pub simplices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub mesh: JsonMesh,
    pub graphs: Vec<JsonGraph>,
    pub rectangles: Vec<JsonRectangle>,
    pub cells: Vec<JsonCell>,
    pub adjacency: Vec<JsonAdjacency>,
    pub simplification: Option<JsonSimplification>,
}

pub const FORMAT: &str = "reeb-complement/1";

/// What was simplified, for the record in the document.
#[derive(Debug, Clone)]
pub struct SimplificationRecord {
    pub settings: Simplification,
    pub side: Side,
    /// Cancellations per field, in application order.
    pub steps: [Vec<Cancellation>; 2],
}

fn graph_json(g: &ReebGraph) -> JsonGraph {
    JsonGraph {
        field: g.field.number(),
        nodes: g
            .nodes
            .values()
            .map(|n| JsonNode { id: n.id, value: (&n.value).into(), vertex: n.vertex, kind: n.kind })
            .collect(),
        arcs: g
            .arcs
            .values()
            .map(|a| JsonArc { id: a.id, lower: a.lower, upper: a.upper, simplex_count: a.simplices.len() })
            .collect(),
    }
}

fn set_json(s: &PolygonSet) -> JsonPolygonSet {
    JsonPolygonSet {
        faces: s.faces.iter().map(|f| JsonFace { outer: ring(&f.outer), holes: f.holes.iter().map(|h| ring(h)).collect() }).collect(),
        segments: s.segments.iter().map(|(a, b)| [jp(a), jp(b)]).collect(),
        points: s.points.iter().map(jp).collect(),
        area: (&s.area()).into(),
    }
}

fn junction_json(j: Junction) -> JsonJunction {
    match j {
        Junction::Within => JsonJunction::Within,
        Junction::Node { field, node } => JsonJunction::Node { field: field.number(), node },
    }
}

pub fn to_document(mesh: &SimplicialMesh, cg: &ComplementGraph, simplification: Option<&SimplificationRecord>) -> Document {
    let rectangles = cg
        .rectangles
        .iter()
        .map(|r| JsonRectangle {
            e1: r.e1,
            e2: r.e2,
            bounds: JsonBounds { x: [(&r.bounds.x.0).into(), (&r.bounds.x.1).into()], y: [(&r.bounds.y.0).into(), (&r.bounds.y.1).into()] },
            common_simplices: r.common,
            reeb: set_json(&r.reeb),
            cells: cg.cells_of(r.e1, r.e2).map(|c| c.id.to_string()).collect(),
        })
        .collect();
    let cells = cg
        .cells
        .iter()
        .map(|c| JsonCell {
            id: c.id.to_string(),
            e1: c.id.e1,
            e2: c.id.e2,
            index: c.id.index,
            outer: ring(&c.face.outer),
            holes: c.face.holes.iter().map(|h| ring(h)).collect(),
            area: (&c.face.area()).into(),
            sample: jp(&c.sample),
            label: c.label.map(|l| l.as_str().to_string()),
        })
        .collect();
    let adjacency = cg
        .adjacency
        .iter()
        .map(|&(a, b, j)| JsonAdjacency { a: cg.cells[a].id.to_string(), b: cg.cells[b].id.to_string(), junction: junction_json(j) })
        .collect();
    let simplification = simplification.map(|s| JsonSimplification {
        measure: s.settings.measure.as_str().to_string(),
        threshold: (&s.settings.threshold).into(),
        mode: s.settings.mode.as_str().to_string(),
        side: s.side.as_str().to_string(),
        cancellations: s
            .steps
            .iter()
            .enumerate()
            .flat_map(|(k, steps)| {
                steps.iter().map(move |c| JsonCancellation { field: k as u8 + 1, leaf: c.leaf, below: c.below, above: c.above, merged: c.merged })
            })
            .collect(),
    });
    Document {
        format: FORMAT.to_string(),
        mesh: JsonMesh { dim: mesh.dim(), vertices: mesh.vertices().len(), simplices: mesh.simplices().len() },
        graphs: cg.graphs.iter().map(graph_json).collect(),
        rectangles,
        cells,
        adjacency,
        simplification,
    }
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialises");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Document, serde_json::Error> {
    serde_json::from_str(text)
}

/// Counts reported by a successful validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub rectangles: usize,
    pub cells: usize,
    pub adjacencies: usize,
    pub labelled: usize,
}

fn point(p: &JsonPoint) -> Result<RPoint, String> {
    Ok(RPoint::new(p[0].value()?, p[1].value()?))
}

fn points(r: &[JsonPoint]) -> Result<Vec<RPoint>, String> {
    r.iter().map(point).collect()
}

fn face(outer: &[JsonPoint], holes: &[Vec<JsonPoint>]) -> Result<Face, String> {
    Ok(Face { outer: points(outer)?, holes: holes.iter().map(|h| points(h)).collect::<Result<_, _>>()? })
}

fn check_graph(g: &JsonGraph, issues: &mut Vec<String>) -> BTreeMap<usize, (Rational, Rational, usize, usize)> {
    let mut values = BTreeMap::new();
    for n in &g.nodes {
        match n.value.value() {
            Ok(v) => {
                if values.insert(n.id, v).is_some() {
                    issues.push(format!("graph {}: duplicate node {}", g.field, n.id));
                }
            }
            Err(e) => issues.push(format!("graph {} node {}: {e}", g.field, n.id)),
        }
    }
    let mut below: BTreeMap<usize, usize> = BTreeMap::new();
    let mut above: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arcs = BTreeMap::new();
    for a in &g.arcs {
        let (Some(lo), Some(hi)) = (values.get(&a.lower), values.get(&a.upper)) else {
            issues.push(format!("graph {} arc {}: unknown endpoint", g.field, a.id));
            continue;
        };
        if lo > hi {
            issues.push(format!("graph {} arc {}: decreasing", g.field, a.id));
        }
        *above.entry(a.lower).or_default() += 1;
        *below.entry(a.upper).or_default() += 1;
        if arcs.insert(a.id, (lo.clone(), hi.clone(), a.lower, a.upper)).is_some() {
            issues.push(format!("graph {}: duplicate arc {}", g.field, a.id));
        }
    }
    for n in &g.nodes {
        let (b, u) = (below.get(&n.id).copied().unwrap_or(0), above.get(&n.id).copied().unwrap_or(0));
        let ok = match n.kind {
            NodeKind::Min => b == 0 && u >= 1,
            NodeKind::Max => u == 0 && b >= 1,
            NodeKind::Subdivision => b == 1 && u == 1,
            NodeKind::Merge => b >= 2 && u >= 1,
            NodeKind::Split => u >= 2 && b >= 1,
            NodeKind::BoundaryEvent => true,
        };
        if !ok {
            issues.push(format!("graph {} node {}: kind {} with {b} arcs below and {u} above", g.field, n.id, n.kind.as_str()));
        }
    }
    arcs
}

/// Re-checks a document: exact rationals, graph structure, rectangle
/// coverage, area conservation, cell samples and adjacency references.
pub fn validate(doc: &Document) -> Result<Summary, Vec<String>> {
    let mut issues = Vec::new();
    if doc.format != FORMAT {
        issues.push(format!("unknown format {:?}", doc.format));
    }
    if doc.graphs.len() != 2 || doc.graphs[0].field != 1 || doc.graphs[1].field != 2 {
        issues.push("expected graphs for fields 1 and 2".to_string());
        return Err(issues);
    }
    let arcs1 = check_graph(&doc.graphs[0], &mut issues);
    let arcs2 = check_graph(&doc.graphs[1], &mut issues);

    let expected: Vec<(usize, usize)> = arcs1.keys().flat_map(|&a| arcs2.keys().map(move |&b| (a, b))).collect();
    let found: Vec<(usize, usize)> = doc.rectangles.iter().map(|r| (r.e1, r.e2)).collect();
    if expected != found {
        issues.push("rectangles are not the sorted product of the arcs".to_string());
    }

    let cell_ids: BTreeMap<&str, usize> = doc.cells.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
    if cell_ids.len() != doc.cells.len() {
        issues.push("duplicate cell ids".to_string());
    }
    let mut seen_cells = BTreeSet::new();
    let mut reebs: BTreeMap<(usize, usize), PolygonSet> = BTreeMap::new();
    for r in &doc.rectangles {
        let tag = format!("rectangle {}x{}", r.e1, r.e2);
        let parsed = (|| -> Result<(Bounds, PolygonSet, Rational), String> {
            let b = Bounds::new((r.bounds.x[0].value()?, r.bounds.x[1].value()?), (r.bounds.y[0].value()?, r.bounds.y[1].value()?));
            let set = PolygonSet {
                faces: r.reeb.faces.iter().map(|f| face(&f.outer, &f.holes)).collect::<Result<_, _>>()?,
                segments: r.reeb.segments.iter().map(|[a, b]| Ok((point(a)?, point(b)?))).collect::<Result<_, String>>()?,
                points: points(&r.reeb.points)?,
            };
            Ok((b, set, r.reeb.area.value()?))
        })();
        let (bounds, reeb, reeb_area) = match parsed {
            Ok(v) => v,
            Err(e) => {
                issues.push(format!("{tag}: {e}"));
                continue;
            }
        };
        if let (Some(a1), Some(a2)) = (arcs1.get(&r.e1), arcs2.get(&r.e2)) {
            if bounds.x != (a1.0.clone(), a1.1.clone()) || bounds.y != (a2.0.clone(), a2.1.clone()) {
                issues.push(format!("{tag}: bounds differ from the arc intervals"));
            }
        }
        if reeb.area() != reeb_area {
            issues.push(format!("{tag}: stored Reeb area differs from its faces"));
        }
        let mut total = reeb_area;
        for id in &r.cells {
            let Some(&i) = cell_ids.get(id.as_str()) else {
                issues.push(format!("{tag}: unknown cell {id}"));
                continue;
            };
            seen_cells.insert(i);
            let c = &doc.cells[i];
            if (c.e1, c.e2) != (r.e1, r.e2) || c.id != format!("{}-{}-{}", c.e1, c.e2, c.index) {
                issues.push(format!("cell {id}: id does not match its rectangle"));
            }
            let checked = (|| -> Result<(), String> {
                let f = face(&c.outer, &c.holes)?;
                let area = c.area.value()?;
                let mut twice = ring_area2(&f.outer);
                for h in &f.holes {
                    twice += ring_area2(h);
                }
                if twice.clone() / Rational::from_integer(2.into()) != area || !twice.is_positive() {
                    return Err("area does not match its rings".into());
                }
                if f.outer.iter().chain(f.holes.iter().flatten()).any(|p| !bounds.contains(p)) {
                    return Err("ring leaves the rectangle".into());
                }
                let s = point(&c.sample)?;
                if !f.contains(&s) || reeb.contains(&s) {
                    return Err("sample is not an interior point of the cell".into());
                }
                if let Some(l) = &c.label {
                    InclusionLabel::parse(l).ok_or_else(|| format!("unknown label {l}"))?;
                }
                total += area;
                Ok(())
            })();
            if let Err(e) = checked {
                issues.push(format!("cell {id}: {e}"));
            }
        }
        if total != bounds.area() {
            issues.push(format!("{tag}: Reeb area plus cell areas differs from the rectangle area"));
        }
        reebs.insert((r.e1, r.e2), reeb);
    }
    if seen_cells.len() != doc.cells.len() {
        issues.push("some cells belong to no rectangle".to_string());
    }

    for adj in &doc.adjacency {
        let (Some(&i), Some(&j)) = (cell_ids.get(adj.a.as_str()), cell_ids.get(adj.b.as_str())) else {
            issues.push(format!("adjacency {} {}: unknown cell", adj.a, adj.b));
            continue;
        };
        let (a, b) = (&doc.cells[i], &doc.cells[j]);
        let ok = match adj.junction {
            JsonJunction::Within => (a.e1, a.e2) == (b.e1, b.e2),
            JsonJunction::Node { field, node } => {
                let (arcs, mine, other) = match field {
                    1 => (&arcs1, (a.e1, b.e1), (a.e2, b.e2)),
                    2 => (&arcs2, (a.e2, b.e2), (a.e1, b.e1)),
                    _ => {
                        issues.push(format!("adjacency {} {}: bad field {field}", adj.a, adj.b));
                        continue;
                    }
                };
                let touches = |e: usize| arcs.get(&e).is_some_and(|x| x.2 == node || x.3 == node);
                other.0 == other.1 && mine.0 != mine.1 && touches(mine.0) && touches(mine.1)
            }
        };
        if !ok {
            issues.push(format!("adjacency {} {}: inconsistent junction", adj.a, adj.b));
        }
    }

    if let Some(s) = &doc.simplification {
        if let Err(e) = s.threshold.value() {
            issues.push(format!("simplification threshold: {e}"));
        }
    }

    if issues.is_empty() {
        Ok(Summary {
            rectangles: doc.rectangles.len(),
            cells: doc.cells.len(),
            adjacencies: doc.adjacency.len(),
            labelled: doc.cells.iter().filter(|c| c.label.is_some()).count(),
        })
    } else {
        Err(issues)
    }
}

/// Fill colour of a cell by label.
pub fn label_fill(label: Option<InclusionLabel>) -> &'static str {
    match label {
        Some(InclusionLabel::FirstInsideSecond) => "#d62728",
        Some(InclusionLabel::SecondInsideFirst) => "#1f77b4",
        Some(InclusionLabel::Disjoint) => "#2ca02c",
        Some(InclusionLabel::UndeterminedBoundary) => "#ff7f0e",
        None => "#ffffff",
    }
}

/// One drawing per rectangle: cells filled by label, Reeb image in gray.
/// Returns `(file name, contents)` pairs.
pub fn svg_files(cg: &ComplementGraph) -> Vec<(String, String)> {
    cg.rectangles
        .iter()
        .map(|r| {
            let cells: Vec<_> = cg.cells_of(r.e1, r.e2).collect();
            let set = PolygonSet { faces: cells.iter().map(|c| c.face.clone()).collect(), segments: Vec::new(), points: Vec::new() };
            let fills = cells.iter().map(|c| label_fill(c.label).to_string()).collect();
            let layers = [
                Layer { set: &set, fills, stroke: "none" },
                Layer { set: &r.reeb, fills: vec!["#9e9e9e".to_string()], stroke: "#616161" },
            ];
            (format!("rect_{}_{}.svg", r.e1, r.e2), render(&r.bounds, &format!("arcs {} x {}", r.e1, r.e2), &layers))
        })
        .collect()
}

/// Both graphs, one DOT graph each.
pub fn dot(cg: &ComplementGraph) -> String {
    format!("{}{}", cg.graphs[0].to_dot("f1"), cg.graphs[1].to_dot("f2"))
}
