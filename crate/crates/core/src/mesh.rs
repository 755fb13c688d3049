//! Triangulated domains carrying two scalar fields.
//!
//! Meshes are read from and written to the RCM text format:
//!
//! ```text
//! rcm <dim> <nverts> <nsimplices>
//! <x> <y> [<z>] <f1> <f2>        # nverts lines
//! <i0> <i1> <i2> [<i3>]          # nsimplices lines, zero-based
//! ```
//!
//! Values are decimal literals and are kept exactly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::Signed;

use crate::geom::rational::{int, parse_rational, to_literal, Rational};

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid mesh: {0}")]
    Invalid(String),
}

/// Selects one of the two scalar fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Field {
    First,
    Second,
}

impl Field {
    pub fn index(self) -> usize {
        match self {
            Field::First => 0,
            Field::Second => 1,
        }
    }

    pub fn other(self) -> Field {
        match self {
            Field::First => Field::Second,
            Field::Second => Field::First,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub coords: Vec<Rational>,
    pub values: [Rational; 2],
}

impl Vertex {
    pub fn value(&self, field: Field) -> &Rational {
        &self.values[field.index()]
    }
}

/// Incidence structure derived once from the simplices.
#[derive(Debug, Clone, Default)]
pub struct Topology {
    /// Edges as `(lo, hi)` vertex pairs, `lo < hi`.
    pub edges: Vec<(usize, usize)>,
    pub edge_index: HashMap<(usize, usize), usize>,
    pub simplex_edges: Vec<Vec<usize>>,
    pub edge_simplices: Vec<Vec<usize>>,
    pub vertex_edges: Vec<Vec<usize>>,
    /// Edge lies on a facet owned by a single simplex.
    pub boundary_edge: Vec<bool>,
    pub boundary_vertex: Vec<bool>,
    /// Connected component of each simplex (facet adjacency).
    pub simplex_component: Vec<usize>,
    pub component_count: usize,
}

#[derive(Debug, Clone)]
pub struct SimplicialMesh {
    dim: usize,
    vertices: Vec<Vertex>,
    simplices: Vec<Vec<usize>>,
    topo: Topology,
}

impl PartialEq for SimplicialMesh {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl SimplicialMesh {
    /// Validates the input and derives its incidence structure.
    pub fn new(dim: usize, vertices: Vec<Vertex>, simplices: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        if dim != 2 && dim != 3 {
            return Err(MeshError::Invalid(format!("dimension must be 2 or 3, got {dim}")));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.coords.len() != dim {
                return Err(MeshError::Invalid(format!("vertex {i} has {} coordinates, expected {dim}", v.coords.len())));
            }
        }
        for (s, simplex) in simplices.iter().enumerate() {
            if simplex.len() != dim + 1 {
                return Err(MeshError::Invalid(format!("simplex {s} has {} vertices, expected {}", simplex.len(), dim + 1)));
            }
            for &v in simplex {
                if v >= vertices.len() {
                    return Err(MeshError::Invalid(format!(
                        "simplex {s} references vertex {v}, but there are only {} vertices",
                        vertices.len()
                    )));
                }
            }
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(MeshError::Invalid(format!("simplex {s} repeats a vertex")));
            }
        }
        let topo = Topology::build(dim, vertices.len(), &simplices);
        Ok(Self { dim, vertices, simplices, topo })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    pub fn value(&self, field: Field, v: usize) -> &Rational {
        self.vertices[v].value(field)
    }

    /// Range-plane image `(f1, f2)` of a vertex.
    pub fn image(&self, v: usize) -> crate::geom::RPoint {
        let vx = &self.vertices[v];
        crate::geom::RPoint::new(vx.values[0].clone(), vx.values[1].clone())
    }

    /// Same domain with the two fields exchanged.
    pub fn swap_fields(&self) -> SimplicialMesh {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { coords: v.coords.clone(), values: [v.values[1].clone(), v.values[0].clone()] })
            .collect();
        SimplicialMesh { dim: self.dim, vertices, simplices: self.simplices.clone(), topo: self.topo.clone() }
    }

    pub fn to_rcm(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rcm {} {} {}", self.dim, self.vertices.len(), self.simplices.len());
        for v in &self.vertices {
            let parts: Vec<String> = v.coords.iter().chain(v.values.iter()).map(to_literal).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        for s in &self.simplices {
            let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), MeshError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_rcm()).map_err(|source| MeshError::Io { path: path.display().to_string(), source })
    }
}

impl Topology {
    fn build(dim: usize, nverts: usize, simplices: &[Vec<usize>]) -> Topology {
        let mut topo = Topology { vertex_edges: vec![Vec::new(); nverts], ..Default::default() };
        for simplex in simplices {
            let mut ids = Vec::with_capacity(simplex.len() * (simplex.len() - 1) / 2);
            for i in 0..simplex.len() {
                for j in i + 1..simplex.len() {
                    let key = (simplex[i].min(simplex[j]), simplex[i].max(simplex[j]));
                    let next = topo.edges.len();
                    let id = *topo.edge_index.entry(key).or_insert(next);
                    if id == next {
                        topo.edges.push(key);
                        topo.edge_simplices.push(Vec::new());
                        topo.vertex_edges[key.0].push(id);
                        topo.vertex_edges[key.1].push(id);
                    }
                    ids.push(id);
                }
            }
            topo.simplex_edges.push(ids);
        }
        for (s, ids) in topo.simplex_edges.iter().enumerate() {
            for &e in ids {
                topo.edge_simplices[e].push(s);
            }
        }

        // Facets (dim-1 faces) decide boundary and adjacency.
        let mut facets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (s, simplex) in simplices.iter().enumerate() {
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            for skip in 0..sorted.len() {
                let facet: Vec<usize> = sorted.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                facets.entry(facet).or_default().push(s);
            }
        }
        topo.boundary_edge = vec![false; topo.edges.len()];
        topo.boundary_vertex = vec![false; nverts];
        let mut uf = crate::geom::polygon::UnionFind::new(simplices.len());
        let mut facet_list: Vec<_> = facets.into_iter().collect();
        facet_list.sort();
        for (facet, owners) in &facet_list {
            if owners.len() == 1 {
                for i in 0..facet.len() {
                    topo.boundary_vertex[facet[i]] = true;
                    for j in i + 1..facet.len() {
                        let e = topo.edge_index[&(facet[i], facet[j])];
                        topo.boundary_edge[e] = true;
                    }
                }
            }
            for w in owners.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let _ = dim;
        let mut remap = HashMap::new();
        topo.simplex_component = (0..simplices.len())
            .map(|s| {
                let r = uf.find(s);
                let next = remap.len();
                *remap.entry(r).or_insert(next)
            })
            .collect();
        topo.component_count = remap.len();
        topo
    }
}

/// Parses the RCM text format.
pub fn parse_mesh(text: &str) -> Result<SimplicialMesh, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(MeshError::Parse { line: 1, message: "missing header".into() })?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "rcm" {
        return Err(MeshError::Parse { line: hline, message: "expected `rcm <dim> <nverts> <nsimplices>`".into() });
    }
    let num = |s: &str, what: &str| -> Result<usize, MeshError> {
        s.parse().map_err(|_| MeshError::Parse { line: hline, message: format!("invalid {what} `{s}`") })
    };
    let dim = num(h[1], "dimension")?;
    let nverts = num(h[2], "vertex count")?;
    let nsimp = num(h[3], "simplex count")?;
    if dim != 2 && dim != 3 {
        return Err(MeshError::Parse { line: hline, message: format!("dimension must be 2 or 3, got {dim}") });
    }
    let mut vertices = Vec::with_capacity(nverts);
    for _ in 0..nverts {
        let (ln, l) = lines.next().ok_or(MeshError::Parse {
            line: text.lines().count(),
            message: format!("expected {nverts} vertex lines, found {}", vertices.len()),
        })?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != dim + 2 {
            return Err(MeshError::Parse { line: ln, message: format!("expected {} numbers, found {}", dim + 2, parts.len()) });
        }
        let vals = parts
            .iter()
            .map(|p| parse_rational(p).map_err(|e| MeshError::Parse { line: ln, message: e.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        vertices.push(Vertex { coords: vals[..dim].to_vec(), values: [vals[dim].clone(), vals[dim + 1].clone()] });
    }
    let mut simplices = Vec::with_capacity(nsimp);
    for _ in 0..nsimp {
        let (ln, l) = lines.next().ok_or(MeshError::Parse {
            line: text.lines().count(),
            message: format!("expected {nsimp} simplex lines, found {}", simplices.len()),
        })?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != dim + 1 {
            return Err(MeshError::Parse { line: ln, message: format!("expected {} indices, found {}", dim + 1, parts.len()) });
        }
        let idx = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| MeshError::Parse { line: ln, message: format!("invalid index `{p}`") }))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= nverts) {
            return Err(MeshError::Parse { line: ln, message: format!("vertex index {bad} out of range (nverts = {nverts})") });
        }
        simplices.push(idx);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(MeshError::Parse { line: ln, message: "unexpected trailing data".into() });
    }
    SimplicialMesh::new(dim, vertices, simplices)
}

pub fn load_mesh(path: impl AsRef<Path>) -> Result<SimplicialMesh, MeshError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| MeshError::Io { path: path.display().to_string(), source })?;
    parse_mesh(&text)
}

/// Simulation-of-simplicity order on vertices: by field value, ties
/// broken by vertex index.
#[derive(Debug, Clone)]
pub struct VertexOrder {
    field: Field,
    rank: Vec<usize>,
    sorted: Vec<usize>,
}

impl VertexOrder {
    pub fn new(mesh: &SimplicialMesh, field: Field) -> Self {
        let mut sorted: Vec<usize> = (0..mesh.vertices.len()).collect();
        sorted.sort_by(|&u, &v| compare_values(mesh, field, u, v));
        let mut rank = vec![0; sorted.len()];
        for (r, &v) in sorted.iter().enumerate() {
            rank[v] = r;
        }
        Self { field, rank, sorted }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Vertices from lowest to highest.
    pub fn sorted(&self) -> &[usize] {
        &self.sorted
    }

    pub fn compare(&self, u: usize, v: usize) -> Ordering {
        self.rank[u].cmp(&self.rank[v])
    }
}

/// `vertex_compare`: never `Equal` for distinct vertices.
pub fn compare_values(mesh: &SimplicialMesh, field: Field, u: usize, v: usize) -> Ordering {
    mesh.value(field, u).cmp(mesh.value(field, v)).then(u.cmp(&v))
}

/// Closed-form fields sampled by the builtin meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticField {
    /// Two basins with minima −1 at (−1, 0) and 0 at (1, 0), merging at 1/2.
    Eq1,
    /// `|x| + |y|`.
    Diamond,
    /// `|x − 1| + |y|` for `x ≥ 0`, `|x + 1| + |y|` otherwise.
    TwinBasins,
}

impl AnalyticField {
    pub fn eval(self, x: &Rational, y: &Rational) -> Rational {
        let one = int(1);
        match self {
            AnalyticField::Eq1 => {
                if *x >= Rational::new(1.into(), 2.into()) {
                    (x - &one).abs() + y.abs()
                } else {
                    (x + &one).abs() + y.abs() - &one
                }
            }
            AnalyticField::Diamond => x.abs() + y.abs(),
            AnalyticField::TwinBasins => {
                if x >= &int(0) {
                    (x - &one).abs() + y.abs()
                } else {
                    (x + &one).abs() + y.abs()
                }
            }
        }
    }
}

/// Named builtin field pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinName {
    /// Eq1 paired with itself.
    Eq1,
    /// Diamond (first) and twin basins (second).
    Eq2,
    /// Diamond in both fields.
    DiamondPair,
    /// Diamond alone, duplicated.
    Eq2F1,
    /// Twin basins alone, duplicated.
    Eq2F2,
}

impl BuiltinName {
    pub fn fields(self) -> (AnalyticField, AnalyticField) {
        use AnalyticField::*;
        match self {
            BuiltinName::Eq1 => (Eq1, Eq1),
            BuiltinName::Eq2 => (Diamond, TwinBasins),
            BuiltinName::DiamondPair | BuiltinName::Eq2F1 => (Diamond, Diamond),
            BuiltinName::Eq2F2 => (TwinBasins, TwinBasins),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::Eq1 => "eq1",
            BuiltinName::Eq2 => "eq2",
            BuiltinName::DiamondPair => "diamond-pair",
            BuiltinName::Eq2F1 => "eq2_f1",
            BuiltinName::Eq2F2 => "eq2_f2",
        }
    }
}

impl std::str::FromStr for BuiltinName {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "eq1" => BuiltinName::Eq1,
            "eq2" => BuiltinName::Eq2,
            "diamond" | "diamond-pair" => BuiltinName::DiamondPair,
            "eq2_f1" => BuiltinName::Eq2F1,
            "eq2_f2" => BuiltinName::Eq2F2,
            other => return Err(MeshError::Invalid(format!("unknown builtin `{other}`"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BuiltinSpec {
    pub name: BuiltinName,
    pub extent: Rational,
    /// Grid cells per side.
    pub resolution: usize,
}

/// Regular grid on `[-extent, extent]²` with `resolution` cells per side,
/// each cell split along its lower-left to upper-right diagonal.
pub fn grid_mesh(
    extent: &Rational,
    resolution: usize,
    mut fields: impl FnMut(&Rational, &Rational) -> [Rational; 2],
) -> Result<SimplicialMesh, MeshError> {
    if resolution < 2 {
        return Err(MeshError::Invalid(format!("resolution must be at least 2, got {resolution}")));
    }
    if !extent.is_positive() {
        return Err(MeshError::Invalid("extent must be positive".into()));
    }
    let n = resolution;
    let coord = |i: usize| -extent + extent * int(2) * Rational::new((i as i64).into(), (n as i64).into());
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        let y = coord(j);
        for i in 0..=n {
            let x = coord(i);
            let values = fields(&x, &y);
            vertices.push(Vertex { coords: vec![x, y.clone()], values });
        }
    }
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut simplices = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            simplices.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            simplices.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    SimplicialMesh::new(2, vertices, simplices)
}

pub fn build_builtin(spec: &BuiltinSpec) -> Result<SimplicialMesh, MeshError> {
    let (a, b) = spec.name.fields();
    grid_mesh(&spec.extent, spec.resolution, |x, y| [a.eval(x, y), b.eval(x, y)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::ratio;

    const TRIANGLE: &str = "# smallest mesh\nrcm 2 3 1\n0 0 0.1 1\n1 0 0.2 2\n0 1 0.3 3\n0 1 2\n";

    #[test]
    fn smallest_mesh_loads() {
        let m = parse_mesh(TRIANGLE).unwrap();
        assert_eq!(m.simplices().len(), 1);
        assert_eq!(m.value(Field::First, 0), &ratio(1, 10));
        assert_eq!(m.topology().edges.len(), 3);
        assert!(m.topology().boundary_edge.iter().all(|&b| b));
        assert_eq!(m.topology().component_count, 1);
    }

    #[test]
    fn index_equal_to_vertex_count_is_rejected() {
        let text = "rcm 2 3 1\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 1 3\n";
        match parse_mesh(text) {
            Err(MeshError::Parse { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("out of range"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_name_lines() {
        let text = "rcm 2 3 1\n0 0 0 0\n1 0 zz 0\n0 1 0 0\n0 1 2\n";
        assert!(matches!(parse_mesh(text), Err(MeshError::Parse { line: 3, .. })));
        assert!(matches!(parse_mesh("rcm 2 1 0\n0 0 nan 0\n"), Err(MeshError::Parse { line: 2, .. })));
        assert!(matches!(parse_mesh("rcm 2 3 1\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 1 1\n"), Err(MeshError::Invalid(_))));
    }

    #[test]
    fn vertex_compare_examples() {
        let text = "rcm 2 8 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0.5 0\n0 0 0.1 0\n0 0 0.2 0\n0 0 0 0\n0 0 0.5 0\n";
        let m = parse_mesh(text).unwrap();
        assert_eq!(compare_values(&m, Field::First, 4, 5), Ordering::Less);
        assert_eq!(compare_values(&m, Field::First, 3, 7), Ordering::Less);
        assert_eq!(compare_values(&m, Field::First, 7, 3), Ordering::Greater);
        let order = VertexOrder::new(&m, Field::First);
        assert_eq!(order.compare(3, 7), Ordering::Less);
    }

    #[test]
    fn builtin_values() {
        let spec = BuiltinSpec { name: BuiltinName::DiamondPair, extent: int(3), resolution: 4 };
        let m = build_builtin(&spec).unwrap();
        assert_eq!(m.vertices().len(), 25);
        assert_eq!(m.simplices().len(), 32);
        for v in m.vertices() {
            assert_eq!(v.values[0], v.coords[0].abs() + v.coords[1].abs());
        }
        // Eq1 global minimum −1 at (−1, 0), reachable on a unit grid.
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq1, extent: int(3), resolution: 6 }).unwrap();
        let (vmin, _) = m.vertices().iter().enumerate().min_by(|a, b| a.1.values[0].cmp(&b.1.values[0])).unwrap();
        assert_eq!(m.value(Field::First, vmin), &int(-1));
        assert_eq!(m.vertices()[vmin].coords, vec![int(-1), int(0)]);
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2F2, extent: int(3), resolution: 6 }).unwrap();
        let minimum = m.vertices().iter().map(|v| v.values[0].clone()).min().unwrap();
        assert_eq!(minimum, int(0));
        let at_min: Vec<_> = m.vertices().iter().filter(|v| v.values[0] == minimum).map(|v| v.coords.clone()).collect();
        assert_eq!(at_min, vec![vec![int(-1), int(0)], vec![int(1), int(0)]]);
    }

    #[test]
    fn builtin_rejects_bad_parameters() {
        assert!(build_builtin(&BuiltinSpec { name: BuiltinName::Eq1, extent: int(3), resolution: 1 }).is_err());
        assert!(build_builtin(&BuiltinSpec { name: BuiltinName::Eq1, extent: int(0), resolution: 4 }).is_err());
    }

    #[test]
    fn rcm_round_trip() {
        let m = build_builtin(&BuiltinSpec { name: BuiltinName::Eq2, extent: ratio(5, 2), resolution: 7 }).unwrap();
        let back = parse_mesh(&m.to_rcm()).unwrap();
        assert_eq!(back, m);
    }

    proptest::proptest! {
        #[test]
        fn vertex_order_is_strict_total(vals in proptest::collection::vec(0i64..4, 3..12), a in 0usize..12, b in 0usize..12, c in 0usize..12) {
            let n = vals.len();
            let (a, b, c) = (a % n, b % n, c % n);
            let mut text = format!("rcm 2 {n} 0\n");
            for v in &vals { text.push_str(&format!("0 0 {v} 0\n")); }
            let m = parse_mesh(&text).unwrap();
            let cmp = |u, v| compare_values(&m, Field::First, u, v);
            if a != b {
                proptest::prop_assert_ne!(cmp(a, b), Ordering::Equal);
                proptest::prop_assert_eq!(cmp(a, b), cmp(b, a).reverse());
            } else {
                proptest::prop_assert_eq!(cmp(a, b), Ordering::Equal);
            }
            if cmp(a, b) == Ordering::Less && cmp(b, c) == Ordering::Less {
                proptest::prop_assert_eq!(cmp(a, c), Ordering::Less);
            }
            if vals[a] != vals[b] {
                proptest::prop_assert_eq!(cmp(a, b), vals[a].cmp(&vals[b]));
            }
        }
    }
}
