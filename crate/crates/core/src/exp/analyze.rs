use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::AnalyzeConfig;
use super::svg::{self, BarGroup, BarPanel};
use super::{create_dir, fmt_f64, write_text};
use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::value_model::{argmax, HypergraphQModel};

pub const REPRESENTATIONS_CSV: &str = "representations.csv";
pub const REPRESENTATIONS_SVG: &str = "representations.svg";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeStats {
    pub agent: String,
    /// 1-based vertex label of the hyperedge, e.g. `{1,3}`.
    pub edge: String,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationStats {
    pub agent: String,
    pub edges: Vec<EdgeStats>,
    /// Steps aggregated.
    pub count: u64,
}

/// Running per-edge sum, min and max.
#[derive(Clone, Debug)]
pub struct RepresentationAccumulator {
    sum: Vec<f64>,
    min: Vec<f64>,
    max: Vec<f64>,
    count: u64,
}

impl RepresentationAccumulator {
    pub fn new(n_edges: usize) -> Self {
        Self {
            sum: vec![0.0; n_edges],
            min: vec![f64::INFINITY; n_edges],
            max: vec![f64::NEG_INFINITY; n_edges],
            count: 0,
        }
    }

    pub fn push(&mut self, rep: &[f64]) -> Result<()> {
        if rep.len() != self.sum.len() {
            return Err(Error::Dimension {
                expected: self.sum.len(),
                got: rep.len(),
            });
        }
        for (j, &x) in rep.iter().enumerate() {
            self.sum[j] += x;
            self.min[j] = self.min[j].min(x);
            self.max[j] = self.max[j].max(x);
        }
        self.count += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if other.sum.len() != self.sum.len() {
            return Err(Error::Dimension {
                expected: self.sum.len(),
                got: other.sum.len(),
            });
        }
        for j in 0..self.sum.len() {
            self.sum[j] += other.sum[j];
            self.min[j] = self.min[j].min(other.min[j]);
            self.max[j] = self.max[j].max(other.max[j]);
        }
        self.count += other.count;
        Ok(())
    }

    pub fn finish(&self, agent: &str, edge_names: &[String]) -> RepresentationStats {
        let n = self.count.max(1) as f64;
        let edges = edge_names
            .iter()
            .enumerate()
            .map(|(j, name)| {
                // clamp guards against the last ulp of summation error
                let mean = (self.sum[j] / n).clamp(self.min[j], self.max[j]);
                EdgeStats {
                    agent: agent.to_string(),
                    edge: name.clone(),
                    mean: if self.count == 0 { 0.0 } else { mean },
                    min: if self.count == 0 { 0.0 } else { self.min[j] },
                    max: if self.count == 0 { 0.0 } else { self.max[j] },
                }
            })
            .collect();
        RepresentationStats {
            agent: agent.to_string(),
            edges,
            count: self.count,
        }
    }
}

pub fn edge_names(model: &HypergraphQModel) -> Vec<String> {
    model
        .hypergraph()
        .edges()
        .iter()
        .map(|e| e.label())
        .collect()
}

/// Acts greedily for `steps` environment steps, resetting at episode ends,
/// and records the chosen action's representation each step.
pub fn collect_greedy<E: Environment + ?Sized>(
    model: &HypergraphQModel,
    env: &mut E,
    steps: usize,
    acc: &mut RepresentationAccumulator,
) -> Result<()> {
    if env.action_space() != model.space() || env.obs_width() != model.obs_width() {
        return Err(Error::IncompatibleCheckpoint(format!(
            "model space {:?} with {} observations, environment space {:?} with {}",
            model.space().cardinalities(),
            model.obs_width(),
            env.action_space().cardinalities(),
            env.obs_width()
        )));
    }
    let mut state = env.reset();
    for _ in 0..steps {
        let eval = model.evaluate(&state)?;
        let a = argmax(&model.q_values_from(&eval));
        acc.push(&model.representation_from(&eval, a))?;
        let r = env.step(a)?;
        state = if r.done() { env.reset() } else { r.state };
    }
    Ok(())
}

fn checkpoint_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ckpt"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::config(
            "ckpt-dir",
            format!("no .ckpt files in {}", dir.display()),
        ));
    }
    Ok(paths)
}

pub fn write_stats_csv(
    path: &Path,
    cfg: &AnalyzeConfig,
    checkpoints: &[String],
    stats: &[RepresentationStats],
) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    let json = serde_json::to_string(cfg)?;
    writeln!(w, "# hyperq analyze-reps")
        .and_then(|_| writeln!(w, "# config {json}"))
        .and_then(|_| writeln!(w, "# checkpoints {}", checkpoints.join(" ")))
        .map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["agent", "edge", "mean", "min", "max", "count"])?;
    for s in stats {
        for e in &s.edges {
            w.write_record([
                e.agent.clone(),
                e.edge.clone(),
                fmt_f64(e.mean),
                fmt_f64(e.min),
                fmt_f64(e.max),
                s.count.to_string(),
            ])?;
        }
    }
    w.into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

pub fn read_stats_csv(path: &Path) -> Result<Vec<EdgeStats>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// Mean per agent and edge with min..max whiskers.
pub fn render_stats_svg(edges: &[EdgeStats]) -> String {
    svg::bar_chart(&BarPanel {
        title: "greedy action representation per hyperedge".into(),
        y_label: "block output".into(),
        bar_names: vec!["mean (min..max)".into()],
        groups: edges
            .iter()
            .map(|e| BarGroup {
                label: format!("{} {}", e.agent, e.edge),
                bars: vec![(e.mean, Some((e.min, e.max)))],
            })
            .collect(),
    })
}

/// Agent label from the checkpoint metadata, else the file stem up to `_seed`.
fn agent_label(path: &Path, meta: Option<&str>) -> String {
    if let Some(a) = meta {
        return a.to_string();
    }
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    stem.split("_seed").next().unwrap_or_default().to_string()
}

/// Aggregates the checkpoints in the directory per agent and writes the CSV
/// and figure. Checkpoints of one agent must share a hypergraph.
pub fn cmd_analyze(cfg: &AnalyzeConfig) -> Result<(Vec<RepresentationStats>, Vec<PathBuf>)> {
    let mut groups: BTreeMap<String, (RepresentationAccumulator, Vec<String>)> = BTreeMap::new();
    let paths = checkpoint_paths(&cfg.ckpt_dir)?;
    let files: Vec<String> = paths
        .iter()
        .map(|p| {
            p.file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    for path in paths {
        let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
        let (model, ckpt) = HypergraphQModel::load(BufReader::new(f))?;
        let seed = match ckpt.meta("seed") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::Checkpoint(format!("{}: bad seed `{s}`", path.display())))?,
            None => cfg.master_seed,
        };
        let agent = agent_label(&path, ckpt.meta("agent"));
        let mut env = cfg.env.build(seed)?;
        let names = edge_names(&model);
        let (total, expected) = groups
            .entry(agent.clone())
            .or_insert_with(|| (RepresentationAccumulator::new(names.len()), names.clone()));
        if *expected != names {
            return Err(Error::IncompatibleCheckpoint(format!(
                "{} has hyperedges {names:?}, earlier `{agent}` checkpoints {expected:?}",
                path.display()
            )));
        }
        let mut one = RepresentationAccumulator::new(names.len());
        collect_greedy(&model, &mut env, cfg.steps, &mut one).map_err(|e| match e {
            Error::IncompatibleCheckpoint(m) => {
                Error::IncompatibleCheckpoint(format!("{}: {m}", path.display()))
            }
            e => e,
        })?;
        total.merge(&one)?;
    }
    let stats: Vec<RepresentationStats> = groups
        .iter()
        .map(|(agent, (total, names))| total.finish(agent, names))
        .collect();
    create_dir(&cfg.out)?;
    let csv_path = cfg.out.join(REPRESENTATIONS_CSV);
    write_stats_csv(&csv_path, cfg, &files, &stats)?;
    let svg_path = cfg.out.join(REPRESENTATIONS_SVG);
    write_text(&svg_path, &render_stats_svg(&read_stats_csv(&csv_path)?))?;
    Ok((stats, vec![csv_path, svg_path]))
}
