//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. Runs sequentially so that timings are not
//! disturbed by other tests sharing the machine.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use reeb_complement::classify::{classify_at, classify_complement, InclusionLabel};
use reeb_complement::complement::{compute_complement, ComplementGraph, Forbidden};
use reeb_complement::geom::rational::{int, ratio, to_f64};
use reeb_complement::geom::{PolygonSet, Rational};
use reeb_complement::mesh::{build_builtin, BuiltinName, BuiltinSpec, Field, SimplicialMesh, VertexOrder};
use reeb_complement::oracle::{compare, empirical_cells, random_field_pair, SamplePlan};
use reeb_complement::pipeline::{analyse, Input, RunConfig};
use reeb_complement::reeb::{compute_reeb_graph_with, BoundaryMode, NodeKind, ReebGraph};
use reeb_complement::simplify::{
    importance, simplify_complement, simplify_graph, ImportanceMeasure, Side, Simplification, SimplificationMode,
};

type Outcome = Result<String, String>;

const CORPUS_SIZE: u64 = 20;

struct Case {
    name: String,
    mesh: SimplicialMesh,
    g1: ReebGraph,
    g2: ReebGraph,
    cg: ComplementGraph,
}

fn graphs(mesh: &SimplicialMesh) -> (ReebGraph, ReebGraph) {
    let g = |f| compute_reeb_graph_with(mesh, &VertexOrder::new(mesh, f), BoundaryMode::Collapse);
    (g(Field::First), g(Field::Second))
}

fn case(name: String, mesh: SimplicialMesh) -> Case {
    let (g1, g2) = graphs(&mesh);
    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg).expect("classification");
    Case { name, mesh, g1, g2, cg }
}

fn builtin(name: BuiltinName, resolution: usize) -> SimplicialMesh {
    build_builtin(&BuiltinSpec { name, extent: int(3), resolution }).expect("builtin mesh")
}

/// Seeds and sizes of the random corpus: 200 to 800 triangles.
fn corpus_mesh(s: u64) -> SimplicialMesh {
    random_field_pair(1000 + s, 10 + (7 * s as usize) % 11).expect("random mesh")
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn eq1() -> Outcome {
    let n = 64;
    let start = Instant::now();
    let mesh = builtin(BuiltinName::Eq1, n);
    let (g, _) = graphs(&mesh);
    let elapsed = start.elapsed();
    let tol = ratio(2 * 3, n as i64 - 1);
    let near = |v: &Rational, target: Rational| {
        let d = v - target;
        d <= tol && -d <= tol
    };
    let mut mins: Vec<&Rational> = g.nodes.values().filter(|x| x.kind == NodeKind::Min).map(|x| &x.value).collect();
    mins.sort();
    let merges: Vec<&Rational> = g.nodes.values().filter(|x| x.kind == NodeKind::Merge).map(|x| &x.value).collect();
    check(mins.len() == 2, format!("{} minima", mins.len()))?;
    check(near(mins[0], int(-1)) && near(mins[1], int(0)), format!("minima at {} and {}", to_f64(mins[0]), to_f64(mins[1])))?;
    check(merges.len() == 1 && near(merges[0], ratio(1, 2)), format!("{} merges", merges.len()))?;
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "MIN {:.4}, {:.4}; MERGE {:.4}; {:.3}s",
        to_f64(mins[0]),
        to_f64(mins[1]),
        to_f64(merges[0]),
        elapsed.as_secs_f64()
    ))
}

fn touches_bottom(set: &PolygonSet, y0: &Rational) -> bool {
    set.faces.iter().flat_map(|f| f.outer.iter()).chain(set.points.iter()).any(|p| &p.y == y0)
        || set.segments.iter().any(|(a, b)| &a.y == y0 || &b.y == y0)
}

fn eq2(c: &Case, elapsed: Duration) -> Outcome {
    check(c.g1.arcs.len() == 1, format!("f1 has {} arcs", c.g1.arcs.len()))?;
    check(c.g2.arcs.len() == 3, format!("f2 has {} arcs", c.g2.arcs.len()))?;
    let merges: Vec<_> = c.g2.nodes.values().filter(|x| x.kind == NodeKind::Merge).collect();
    check(merges.len() == 1 && merges[0].value == int(1), "f2 needs one MERGE at 1")?;
    check(c.cg.rectangles.len() == 3, format!("{} rectangles", c.cg.rectangles.len()))?;
    let merge = merges[0].id;
    for r in &c.cg.rectangles {
        if c.g2.arcs[&r.e2].upper != merge {
            continue;
        }
        check(r.reeb.closed_components() == 1, format!("rectangle {}x{}: Reeb image not connected", r.e1, r.e2))?;
        check(touches_bottom(&r.reeb, &r.bounds.y.0), format!("rectangle {}x{}: Reeb image misses the bottom edge", r.e1, r.e2))?;
    }
    let start = Instant::now();
    let plan = SamplePlan { resolution: 48, ..SamplePlan::default() };
    let issues = compare(&c.cg, &empirical_cells(&c.mesh, &c.g1, &c.g2, &plan, BoundaryMode::Collapse));
    check(issues.is_empty(), issues.join("; "))?;
    check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    let counts: Vec<String> = c.cg.rectangles.iter().map(|r| r.cell_count().to_string()).collect();
    Ok(format!(
        "3 rectangles, cells {}, oracle agrees; pipeline {:.2}s, oracle {:.2}s",
        counts.join("/"),
        elapsed.as_secs_f64(),
        start.elapsed().as_secs_f64()
    ))
}

fn diamond(c: &Case) -> Outcome {
    check(c.cg.rectangles.len() == 1, format!("{} rectangles", c.cg.rectangles.len()))?;
    let r = &c.cg.rectangles[0];
    check(r.reeb.area() == int(0), "Reeb image has area")?;
    check(c.cg.cells.len() == 2, format!("{} cells", c.cg.cells.len()))?;
    for cell in &c.cg.cells {
        let want = if cell.sample.y > cell.sample.x {
            InclusionLabel::FirstInsideSecond
        } else {
            InclusionLabel::SecondInsideFirst
        };
        check(cell.label == Some(want), format!("cell {} labelled {:?}", cell.id, cell.label))?;
    }
    Ok("1 rectangle, zero Reeb area, 2 cells: FIRST_INSIDE_SECOND above, SECOND_INSIDE_FIRST below".into())
}

fn oracle_suite(corpus: &[Case], elapsed: Duration) -> Outcome {
    let start = Instant::now();
    let plan = SamplePlan::default();
    let mut issues = Vec::new();
    let mut samples = 0;
    for c in corpus {
        let empirical = empirical_cells(&c.mesh, &c.g1, &c.g2, &plan, BoundaryMode::Collapse);
        samples += empirical.iter().map(|r| r.samples.len()).sum::<usize>();
        issues.extend(compare(&c.cg, &empirical).into_iter().map(|i| format!("{}: {i}", c.name)));
    }
    let total = elapsed + start.elapsed();
    check(issues.is_empty(), issues.join("; "))?;
    check(total < Duration::from_secs(60), format!("took {total:?}"))?;
    let cells: usize = corpus.iter().map(|c| c.cg.cells.len()).sum();
    Ok(format!("{} meshes, {cells} cells, {samples} samples agree; {:.1}s", corpus.len(), total.as_secs_f64()))
}

fn conservation(cases: &[&Case]) -> Outcome {
    let mut n = 0;
    for c in cases {
        for r in &c.cg.rectangles {
            let cells: Rational = c.cg.cells_of(r.e1, r.e2).map(|x| x.face.area()).sum();
            check(
                r.bounds.area() == r.reeb.area() + cells,
                format!("{} rectangle {}x{} loses area", c.name, r.e1, r.e2),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} rectangles balance exactly"))
}

type Summary = Vec<((usize, usize), Rational, Vec<(Rational, Option<InclusionLabel>)>)>;

fn summary(cg: &ComplementGraph) -> Summary {
    cg.rectangles
        .iter()
        .map(|r| {
            let cells = cg.cells_of(r.e1, r.e2).map(|c| (c.face.area(), c.label)).collect();
            ((r.e1, r.e2), r.bounds.area(), cells)
        })
        .collect()
}

/// Three thresholds that cancel progressively more arcs of this pair.
fn thresholds(c: &Case) -> Vec<Rational> {
    let mut p: Vec<Rational> = [&c.g1, &c.g2]
        .iter()
        .flat_map(|g| g.arcs.keys().map(move |&a| importance(g, a, ImportanceMeasure::Persistence)))
        .collect();
    p.sort();
    [4, 2, 1].iter().map(|&d| p[(p.len() - 1) / d].clone() + ratio(1, 100_000)).collect()
}

fn commutation(corpus: &[Case]) -> Outcome {
    let mut runs = 0;
    let mut merged = 0;
    for c in corpus {
        for t in thresholds(c) {
            let mut complement_area = BTreeMap::new();
            for mode in [SimplificationMode::Consider, SimplificationMode::Ignore] {
                let s = Simplification { measure: ImportanceMeasure::Persistence, threshold: t.clone(), mode };
                let direct = simplify_complement(&c.mesh, &c.cg, Side::Both, &s).map_err(|e| format!("{}: {e}", c.name))?;
                let (s1, s2) = (simplify_graph(&c.g1, &s), simplify_graph(&c.g2, &s));
                let mut via = compute_complement(&c.mesh, &s1, &s2);
                classify_complement(&c.mesh, &mut via).map_err(|e| format!("{}: {e}", c.name))?;
                check(
                    summary(&direct) == summary(&via),
                    format!("{} at {} ({}): complements differ", c.name, to_f64(&t), mode.as_str()),
                )?;
                let fresh = |e: usize, g: &ReebGraph| !g.arcs.contains_key(&e);
                for r in &direct.rectangles {
                    if fresh(r.e1, &c.g1) || fresh(r.e2, &c.g2) {
                        complement_area.entry((r.e1, r.e2)).or_insert_with(Vec::new).push(r.complement.area());
                    }
                }
                runs += 1;
            }
            for (key, areas) in complement_area {
                if let [consider, ignore] = areas.as_slice() {
                    check(ignore >= consider, format!("{} rectangle {key:?}: IGNORE area below CONSIDER", c.name))?;
                    merged += 1;
                }
            }
        }
    }
    Ok(format!("{runs} simplifications commute; IGNORE >= CONSIDER on {merged} merged rectangles"))
}

fn constancy(corpus: &[Case]) -> Outcome {
    let mut cells = 0;
    for c in corpus {
        let forbidden = Forbidden::new(&c.mesh, &c.g1, &c.g2);
        for cell in &c.cg.cells {
            let points = forbidden.samples(&cell.face, 10);
            check(points.len() == 10, format!("{} cell {}: only {} sample points", c.name, cell.id, points.len()))?;
            for p in &points {
                let label = classify_at(&c.mesh, &c.g1, &c.g2, cell.id.e1, cell.id.e2, p)
                    .map_err(|e| format!("{} cell {}: {e}", c.name, cell.id))?;
                check(
                    Some(label) == cell.label,
                    format!("{} cell {}: {} at ({}, {})", c.name, cell.id, label.as_str(), to_f64(&p.x), to_f64(&p.y)),
                )?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells keep their label at 10 points each"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("corpus_3.rcm");
    corpus_mesh(3).save(&path).map_err(|e| e.to_string())?;
    let spec = |name, resolution| Input::Builtin(BuiltinSpec { name, extent: int(3), resolution });
    let mut configs = vec![
        RunConfig::new(spec(BuiltinName::Eq1, 64)),
        RunConfig::new(spec(BuiltinName::Eq2, 64)),
        RunConfig::new(spec(BuiltinName::DiamondPair, 64)),
        RunConfig::new(Input::Mesh(path)),
    ];
    let mut simplified = RunConfig::new(Input::Mesh(dir.path().join("corpus_3.rcm")));
    simplified.simplify = Some((
        Simplification { measure: ImportanceMeasure::Persistence, threshold: ratio(1, 5), mode: SimplificationMode::Ignore },
        Side::Both,
    ));
    configs.push(simplified);
    for config in &configs {
        let a = analyse(config).map_err(|e| e.to_string())?.json;
        let b = analyse(config).map_err(|e| e.to_string())?.json;
        check(a == b, format!("{:?}: JSON differs between runs", config.input))?;
    }
    Ok(format!("{} configurations byte-identical", configs.len()))
}

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "Reeb graph of eq1", eq1()));

    let start = Instant::now();
    let eq2_case = case("eq2".into(), builtin(BuiltinName::Eq2, 64));
    let eq2_time = start.elapsed();
    results.push((2, "eq2 structure", eq2(&eq2_case, eq2_time)));

    let diamond_case = case("diamond-pair".into(), builtin(BuiltinName::DiamondPair, 64));
    results.push((3, "diamond-pair", diamond(&diamond_case)));

    let start = Instant::now();
    let corpus: Vec<Case> = (0..CORPUS_SIZE).map(|s| case(format!("seed {}", 1000 + s), corpus_mesh(s))).collect();
    results.push((4, "oracle equivalence", oracle_suite(&corpus, start.elapsed())));

    let mut all: Vec<&Case> = vec![&eq2_case, &diamond_case];
    all.extend(corpus.iter());
    results.push((5, "area conservation", conservation(&all)));
    results.push((6, "simplification commutation", commutation(&corpus)));
    results.push((7, "label constancy", constancy(&corpus)));
    results.push((8, "determinism", determinism()));

    let mut failed = false;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n} ({name}): PASS  {detail}"),
            Err(why) => {
                failed = true;
                println!("criterion {n} ({name}): FAIL  {why}");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
