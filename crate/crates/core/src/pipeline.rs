//! End-to-end driver: mesh in, complement and artifacts out.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::classify::{classify_complement, ClassifyError};
use crate::complement::{compute_complement, ComplementGraph};
use crate::export::{self, Document, SimplificationRecord};
use crate::mesh::{build_builtin, load_mesh, BuiltinSpec, Field, MeshError, SimplicialMesh, VertexOrder};
use crate::oracle::{compare, empirical_cells, SamplePlan};
use crate::reeb::{compute_reeb_graph_with, BoundaryMode};
use crate::simplify::{simplify_complement, simplify_graph_steps, Side, Simplification};

#[derive(Debug, Clone)]
pub enum Input {
    Mesh(PathBuf),
    Builtin(BuiltinSpec),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Input,
    pub simplify: Option<(Simplification, Side)>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    /// Oracle grid resolution; disagreement fails the run.
    pub oracle_check: Option<usize>,
    pub verbose: bool,
}

impl RunConfig {
    pub fn new(input: Input) -> Self {
        Self { input, simplify: None, output: None, svg: None, dot: None, oracle_check: None, verbose: false }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("Reeb graph of field {field} is inconsistent: {message}")]
    Graph { field: u8, message: String },
    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("oracle disagrees:\n  {}", .0.join("\n  "))]
    Oracle(Vec<String>),
}

pub struct RunOutput {
    pub mesh: SimplicialMesh,
    pub complement: ComplementGraph,
    pub document: Document,
    pub json: String,
}

pub fn load_input(input: &Input) -> Result<SimplicialMesh, MeshError> {
    match input {
        Input::Mesh(path) => load_mesh(path),
        Input::Builtin(spec) => build_builtin(spec),
    }
}

/// Everything up to the finished document, without touching the file system.
pub fn analyse(config: &RunConfig) -> Result<RunOutput, RunError> {
    let start = Instant::now();
    let log = |what: &str| {
        if config.verbose {
            eprintln!("[{:>8.3}s] {what}", start.elapsed().as_secs_f64());
        }
    };
    let mesh = load_input(&config.input)?;
    log(&format!("mesh: dim {}, {} vertices, {} simplices", mesh.dim(), mesh.vertices().len(), mesh.simplices().len()));

    let graph = |field: Field| {
        let g = compute_reeb_graph_with(&mesh, &VertexOrder::new(&mesh, field), BoundaryMode::Collapse);
        g.check(&mesh).map_err(|message| RunError::Graph { field: field.number(), message })?;
        Ok::<_, RunError>(g)
    };
    let (g1, g2) = (graph(Field::First)?, graph(Field::Second)?);
    log(&format!("graphs: {} and {} arcs", g1.arcs.len(), g2.arcs.len()));

    let mut cg = compute_complement(&mesh, &g1, &g2);
    classify_complement(&mesh, &mut cg)?;
    log(&format!("complement: {} rectangles, {} cells", cg.rectangles.len(), cg.cells.len()));

    if let Some(n) = config.oracle_check {
        let plan = SamplePlan { resolution: n, ..SamplePlan::default() };
        let issues = compare(&cg, &empirical_cells(&mesh, &g1, &g2, &plan, BoundaryMode::Collapse));
        if !issues.is_empty() {
            return Err(RunError::Oracle(issues));
        }
        log("oracle: agrees");
    }

    let mut record = None;
    if let Some((s, side)) = &config.simplify {
        let steps = [0, 1].map(|k| {
            let applies = matches!((side, k), (Side::Both, _) | (Side::First, 0) | (Side::Second, 1));
            if applies {
                simplify_graph_steps(&cg.graphs[k], s).1
            } else {
                Vec::new()
            }
        });
        cg = simplify_complement(&mesh, &cg, *side, s)?;
        log(&format!("simplified: {} + {} cancellations, {} cells", steps[0].len(), steps[1].len(), cg.cells.len()));
        record = Some(SimplificationRecord { settings: s.clone(), side: *side, steps });
    }

    let document = export::to_document(&mesh, &cg, record.as_ref());
    let json = export::to_json(&document);
    // The written artifact must survive its own validator.
    let reread = export::from_json(&json).map_err(|e| RunError::Validation(vec![e.to_string()]))?;
    export::validate(&reread).map_err(RunError::Validation)?;
    log("document validated");
    Ok(RunOutput { mesh, complement: cg, document, json })
}

fn write(path: &Path, contents: &str) -> Result<(), RunError> {
    std::fs::write(path, contents).map_err(|source| RunError::Io { path: path.display().to_string(), source })
}

/// Runs the pipeline and writes the requested artifacts.
pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    let out = analyse(config)?;
    if let Some(path) = &config.output {
        write(path, &out.json)?;
    }
    if let Some(dir) = &config.svg {
        std::fs::create_dir_all(dir).map_err(|source| RunError::Io { path: dir.display().to_string(), source })?;
        for (name, svg) in export::svg_files(&out.complement) {
            write(&dir.join(name), &svg)?;
        }
    }
    if let Some(path) = &config.dot {
        write(path, &export::dot(&out.complement))?;
    }
    Ok(out)
}

/// Reads a JSON artifact and re-checks it.
pub fn validate_file(path: &Path) -> Result<export::Summary, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io { path: path.display().to_string(), source })?;
    let doc = export::from_json(&text).map_err(|e| RunError::Validation(vec![format!("{}: {e}", path.display())]))?;
    export::validate(&doc).map_err(RunError::Validation)
}
