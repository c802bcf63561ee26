//! Commands behind the `glyphtopo` binary.

pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use glyphtopo::graph::{serialize_pretty, to_dot};
use glyphtopo::netpbm::encode_p1;
use glyphtopo::par::{map_with, Execution};
use glyphtopo::pipeline::{load_image, Extraction, Pipeline};
use glyphtopo::recognizer::{match_vector, vectorize, ShapeIdVector, TrainingStore};
use glyphtopo::skeleton::thin;
use glyphtopo::topo::{Direction, ScanParams};
use glyphtopo::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Schema(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Schema(_) => 2,
        }
    }

    fn at(path: &Path, e: Error) -> CliError {
        match e {
            Error::Schema { .. } => CliError::Schema(format!("{}: {e}", path.display())),
            other => CliError::Input(format!("{}: {other}", path.display())),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub xi: usize,
    pub epsilon: usize,
    pub directions: Vec<Direction>,
    pub skip_thinning: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            xi: ScanParams::DEFAULT_XI,
            epsilon: ScanParams::DEFAULT_EPSILON,
            directions: Direction::ALL.to_vec(),
            skip_thinning: false,
        }
    }
}

impl RunConfig {
    pub fn pipeline(&self) -> CliResult<Pipeline> {
        let params =
            ScanParams::new(self.xi, self.epsilon).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Pipeline {
            params,
            directions: self.directions.clone(),
            skip_thinning: self.skip_thinning,
        })
    }
}

/// Parse a direction list such as `NSEW`, `n,e` or `W`.
pub fn parse_directions(s: &str) -> Result<Vec<Direction>, String> {
    let mut out = Vec::new();
    for ch in s.chars().filter(|c| !matches!(c, ',' | ' ')) {
        let d = Direction::from_letter(ch.to_ascii_uppercase())
            .ok_or_else(|| format!("unknown direction '{ch}' (expected N, S, E or W)"))?;
        if !out.contains(&d) {
            out.push(d);
        }
    }
    if out.is_empty() {
        return Err("no directions given".into());
    }
    Ok(out)
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn run_image(path: &Path, cfg: &RunConfig) -> CliResult<Extraction> {
    let pipeline = cfg.pipeline()?;
    let img = load_image(&read(path)?).map_err(|e| CliError::at(path, e))?;
    pipeline.run(&img).map_err(|e| CliError::at(path, e))
}

/// Graph JSON for one image.
pub fn cmd_extract(path: &Path, cfg: &RunConfig) -> CliResult<String> {
    Ok(serialize_pretty(&run_image(path, cfg)?.graph))
}

/// SVG overlay and DOT graph for one image.
pub fn cmd_render(path: &Path, cfg: &RunConfig) -> CliResult<(String, String)> {
    let ex = run_image(path, cfg)?;
    Ok((
        render::svg(ex.skeleton.raster(), &ex.features),
        to_dot(&ex.graph),
    ))
}

/// Thinned image as plain P1.
pub fn cmd_thin(path: &Path) -> CliResult<String> {
    let img = load_image(&read(path)?).map_err(|e| CliError::at(path, e))?;
    let sk = thin(&img).map_err(|e| CliError::at(path, e))?;
    Ok(encode_p1(sk.raster()))
}

fn sorted_entries(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()).map_err(|e| CliError::io(dir, e)))
        .collect::<CliResult<_>>()?;
    paths.sort();
    Ok(paths)
}

/// Build a store from `dir/<label>/<image>`; labels and files in
/// lexicographic order.
pub fn cmd_train(dir: &Path, cfg: &RunConfig) -> CliResult<TrainingStore> {
    let mut store = TrainingStore::new();
    for label_dir in sorted_entries(dir)?.into_iter().filter(|p| p.is_dir()) {
        let label = label_dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        for file in sorted_entries(&label_dir)?
            .into_iter()
            .filter(|p| p.is_file())
        {
            store.push(label.clone(), vectorize(&run_image(&file, cfg)?.graph));
        }
    }
    if store.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no training images found",
            dir.display()
        )));
    }
    Ok(store)
}

pub fn load_store(path: &Path) -> CliResult<TrainingStore> {
    TrainingStore::load(path).map_err(|e| match e {
        Error::Schema { .. } => CliError::Schema(e.to_string()),
        other => CliError::Input(other.to_string()),
    })
}

/// Ranked `(label, score)` pairs for one image.
pub fn cmd_match(
    path: &Path,
    store: &TrainingStore,
    cfg: &RunConfig,
) -> CliResult<Vec<(String, f64)>> {
    let v = vectorize(&run_image(path, cfg)?.graph);
    match_vector(&v, store).map_err(|e| CliError::Input(e.to_string()))
}

pub fn format_ranking(ranked: &[(String, f64)]) -> String {
    ranked
        .iter()
        .map(|(l, s)| format!("{l} {s:.4}\n"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum BatchOutcome {
    Ok { nodes: usize, ids: ShapeIdVector },
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchRow {
    pub file: String,
    pub outcome: BatchOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
}

impl BatchReport {
    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.outcome, BatchOutcome::Failed(_)))
            .count()
    }

    /// Tab-separated summary: file, node count (or `error`), shape-id vector
    /// (or the error message).
    pub fn summary(&self) -> String {
        let mut out = String::from("file\tnodes\tshape_ids\n");
        for row in &self.rows {
            match &row.outcome {
                BatchOutcome::Ok { nodes, ids } => {
                    out.push_str(&format!("{}\t{nodes}\t{ids}\n", row.file))
                }
                BatchOutcome::Failed(msg) => out.push_str(&format!("{}\terror\t{msg}\n", row.file)),
            }
        }
        out
    }
}

/// Extract every regular file of `dir` into `out_dir/<file name>.json` and write
/// `out_dir/summary.tsv`. Files are processed with `execution` but rows and
/// outputs follow file-name order.
pub fn cmd_batch(
    dir: &Path,
    out_dir: &Path,
    cfg: &RunConfig,
    execution: Execution,
) -> CliResult<BatchReport> {
    cfg.pipeline()?;
    let files: Vec<PathBuf> = sorted_entries(dir)?
        .into_iter()
        .filter(|p| p.is_file())
        .collect();
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let results = map_with(&files, execution, |path| {
        let graph = run_image(path, cfg)?.graph;
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        write(
            &out_dir.join(format!("{name}.json")),
            &serialize_pretty(&graph),
        )?;
        Ok::<_, CliError>(BatchOutcome::Ok {
            nodes: graph.node_count(),
            ids: vectorize(&graph),
        })
    });
    let rows = files
        .iter()
        .zip(results)
        .map(|(path, r)| BatchRow {
            file: path
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned(),
            outcome: r.unwrap_or_else(|e| BatchOutcome::Failed(e.to_string())),
        })
        .collect();
    let report = BatchReport { rows };
    write(&out_dir.join("summary.tsv"), &report.summary())?;
    Ok(report)
}
