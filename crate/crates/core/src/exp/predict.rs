use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::PredictConfig;
use super::svg::{self, BarGroup, BarPanel, LinePanel, Series};
use super::{create_dir, distinct, fmt_f64, write_text};
use crate::bandit::{run_prediction_study, StudyConfig, StudyResult};
use crate::error::{Error, Result};

pub const CURVES_CSV: &str = "curves.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const SUMMARY_CURVES_CSV: &str = "summary_curves.csv";
pub const CURVES_SVG: &str = "normalized_curves.svg";
pub const FINAL_SVG: &str = "final_error.svg";

/// One row of the summary table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub variant: String,
    pub size: usize,
    pub n: usize,
    pub mean_final: f64,
    pub std_final: f64,
    pub stderr_final: f64,
}

/// One point of a mean normalized curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub variant: String,
    pub size: usize,
    pub iteration: usize,
    pub mean_normalized: f64,
}

fn csv_writer(path: &Path, study: &StudyConfig) -> Result<csv::Writer<BufWriter<File>>> {
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    let json = serde_json::to_string(study)?;
    writeln!(w, "# hyperq predict")
        .and_then(|_| writeln!(w, "# config {json}"))
        .map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(w))
}

fn finish(w: csv::Writer<BufWriter<File>>, path: &Path) -> Result<()> {
    w.into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

pub fn write_curves_csv(path: &Path, result: &StudyResult) -> Result<()> {
    let mut w = csv_writer(path, &result.config)?;
    w.write_record(["variant", "size", "seed", "iteration", "rms"])?;
    for c in &result.curves {
        let (v, size, seed) = (
            c.variant.to_string(),
            c.size.to_string(),
            c.seed.to_string(),
        );
        for (i, x) in c.rms.iter().enumerate() {
            w.write_record([v.as_str(), &size, &seed, &i.to_string(), &fmt_f64(*x)])?;
        }
    }
    finish(w, path)
}

pub fn write_summary_csvs(dir: &Path, result: &StudyResult) -> Result<()> {
    let summary = result.summary();
    let path = dir.join(SUMMARY_CSV);
    let mut w = csv_writer(&path, &result.config)?;
    w.write_record([
        "variant",
        "size",
        "n",
        "mean_final",
        "std_final",
        "stderr_final",
    ])?;
    for s in &summary {
        w.write_record([
            s.variant.to_string(),
            s.size.to_string(),
            s.n.to_string(),
            fmt_f64(s.mean_final),
            fmt_f64(s.std_final),
            fmt_f64(s.stderr_final),
        ])?;
    }
    finish(w, &path)?;

    let path = dir.join(SUMMARY_CURVES_CSV);
    let mut w = csv_writer(&path, &result.config)?;
    w.write_record(["variant", "size", "iteration", "mean_normalized"])?;
    for s in &summary {
        let (v, size) = (s.variant.to_string(), s.size.to_string());
        for (i, x) in s.mean_normalized_curve.iter().enumerate() {
            w.write_record([v.as_str(), &size, &i.to_string(), &fmt_f64(*x)])?;
        }
    }
    finish(w, &path)
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
            _ => Error::Csv(e),
        })?;
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    read_rows(path)
}

pub fn read_summary_curves(path: &Path) -> Result<Vec<CurvePoint>> {
    read_rows(path)
}

/// Mean normalized error per iteration; one panel per size.
pub fn render_curves_svg(points: &[CurvePoint]) -> String {
    let sizes = distinct(points.iter().map(|p| p.size));
    let variants = distinct(points.iter().map(|p| p.variant.clone()));
    let panels: Vec<LinePanel> = sizes
        .iter()
        .map(|&size| LinePanel {
            title: format!("{size} sub-actions per dimension"),
            x_label: "iteration".into(),
            y_label: "normalized RMS error".into(),
            series: variants
                .iter()
                .map(|v| Series {
                    name: v.clone(),
                    points: points
                        .iter()
                        .filter(|p| p.size == size && &p.variant == v)
                        .map(|p| (p.iteration as f64, p.mean_normalized))
                        .collect(),
                })
                .filter(|s| !s.points.is_empty())
                .collect(),
        })
        .collect();
    svg::line_chart(&panels)
}

/// Mean final error with one-standard-error whiskers, grouped by size.
pub fn render_final_svg(rows: &[SummaryRow]) -> String {
    let variants = distinct(rows.iter().map(|r| r.variant.clone()));
    let sizes = distinct(rows.iter().map(|r| r.size));
    let groups = sizes
        .iter()
        .map(|&size| BarGroup {
            label: format!("{size} per dim"),
            bars: variants
                .iter()
                .map(|v| {
                    rows.iter()
                        .find(|r| r.size == size && &r.variant == v)
                        .map_or((f64::NAN, None), |r| {
                            (
                                r.mean_final,
                                Some((
                                    r.mean_final - r.stderr_final,
                                    r.mean_final + r.stderr_final,
                                )),
                            )
                        })
                })
                .collect(),
        })
        .collect();
    svg::bar_chart(&BarPanel {
        title: "final RMS error".into(),
        y_label: "RMS error".into(),
        bar_names: variants,
        groups,
    })
}

/// Re-renders both figures from the summary CSVs in `dir`.
pub fn render_predict_figures(dir: &Path) -> Result<()> {
    let points = read_summary_curves(&dir.join(SUMMARY_CURVES_CSV))?;
    write_text(&dir.join(CURVES_SVG), &render_curves_svg(&points))?;
    let rows = read_summary(&dir.join(SUMMARY_CSV))?;
    write_text(&dir.join(FINAL_SVG), &render_final_svg(&rows))
}

/// Runs the study and writes every output file; returns the written paths.
pub fn cmd_predict(cfg: &PredictConfig) -> Result<(StudyResult, Vec<PathBuf>)> {
    create_dir(&cfg.out)?;
    let result = run_prediction_study(&cfg.study)?;
    write_curves_csv(&cfg.out.join(CURVES_CSV), &result)?;
    write_summary_csvs(&cfg.out, &result)?;
    render_predict_figures(&cfg.out)?;
    let files = [
        CURVES_CSV,
        SUMMARY_CSV,
        SUMMARY_CURVES_CSV,
        CURVES_SVG,
        FINAL_SVG,
    ]
    .iter()
    .map(|f| cfg.out.join(f))
    .collect();
    Ok((result, files))
}
