//! Result files of a sweep (`sweep.csv`, `optima.csv`, `figure2.json`) and
//! the plain-text summary built from them.
//!
//! CSV numbers carry six significant digits with `.` as decimal separator.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::sweep::{OrientationOptimum, RelativeMetrics, SweepRow};

pub const SWEEP_CSV: &str = "sweep.csv";
pub const OPTIMA_CSV: &str = "optima.csv";
pub const FIGURE_JSON: &str = "figure2.json";

pub const SWEEP_HEADER: &str =
    "orientation_deg,width_m,wfr,wwr,d_opt_m,relative_depth,hdh,cdh,tdh,tdh_no_overhang,cdh_over_tdh,performance";
pub const OPTIMA_HEADER: &str = "orientation_deg,wfr_opt_with_overhang,width_with_overhang_m,d_opt_m,relative_depth,tdh_with_overhang,cdh_over_tdh,performance_with_overhang,boundary_with_overhang,wfr_opt_without_overhang,width_without_overhang_m,tdh_without_overhang,performance_without_overhang,boundary_without_overhang";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("missing result file {0}")]
    Missing(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file} line {line}: {reason}")]
    Format { file: String, line: usize, reason: String },
    #[error("{0} holds no result rows")]
    Empty(String),
}

/// Six significant digits, plain decimal notation.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    rounded.to_string()
}

pub fn sweep_csv(rows: &[SweepRow], metrics: &RelativeMetrics) -> String {
    let mut out = String::with_capacity(rows.len() * 120);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for (r, m) in rows.iter().zip(&metrics.rows) {
        let cells = [
            r.orientation,
            r.width,
            r.wfr,
            r.wwr,
            r.d_opt,
            r.relative_depth,
            r.hdh,
            r.cdh,
            r.tdh,
            r.tdh_no_overhang,
            m.cdh_over_tdh,
            m.performance,
        ];
        push_row(&mut out, cells.iter().map(|&x| format_sig6(x)));
    }
    out
}

pub fn optima_csv(optima: &[OrientationOptimum], metrics: &RelativeMetrics) -> String {
    let mut out = String::new();
    out.push_str(OPTIMA_HEADER);
    out.push('\n');
    for (o, m) in optima.iter().zip(&metrics.optima) {
        let cells = [
            format_sig6(o.orientation),
            format_sig6(o.wfr_opt_with_overhang),
            format_sig6(o.width_with_overhang),
            format_sig6(o.d_opt),
            format_sig6(o.relative_depth),
            format_sig6(o.tdh_with_overhang),
            format_sig6(o.cdh_over_tdh),
            format_sig6(m.performance_with_overhang),
            o.boundary_with_overhang.to_string(),
            format_sig6(o.wfr_opt_without_overhang),
            format_sig6(o.width_without_overhang),
            format_sig6(o.tdh_without_overhang),
            format_sig6(m.performance_without_overhang),
            o.boundary_without_overhang.to_string(),
        ];
        push_row(&mut out, cells.into_iter());
    }
    out
}

fn push_row(out: &mut String, cells: impl Iterator<Item = String>) {
    for (i, c) in cells.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&c);
    }
    out.push('\n');
}

/// Plot-ready series for one orientation, indexed by window width.
#[derive(Debug, Clone, Serialize)]
pub struct OrientationSeries {
    pub orientation_deg: f64,
    pub wfr: Vec<f64>,
    pub wwr: Vec<f64>,
    /// Relative thermal performance with the optimum overhang (blue).
    pub performance: Vec<f64>,
    pub performance_no_overhang: Vec<f64>,
    /// CDH / TDH (red).
    pub cdh_over_tdh: Vec<f64>,
    /// Optimum overhang depth over the normalizing length (green).
    pub relative_depth: Vec<f64>,
    /// Optimum WFR with overhang (black).
    pub optimum_wfr: f64,
    /// Optimum WFR without overhang (dotted black).
    pub optimum_wfr_no_overhang: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FigureData {
    pub windowless_tdh: f64,
    pub best_tdh: f64,
    pub orientations: Vec<f64>,
    pub optimum_wfr: Vec<f64>,
    pub optimum_wfr_no_overhang: Vec<f64>,
    pub optimum_relative_depth: Vec<f64>,
    pub series: Vec<OrientationSeries>,
}

pub fn figure_data(rows: &[SweepRow], optima: &[OrientationOptimum], metrics: &RelativeMetrics) -> FigureData {
    let series = optima
        .iter()
        .map(|o| {
            let picked: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].orientation == o.orientation).collect();
            OrientationSeries {
                orientation_deg: o.orientation,
                wfr: picked.iter().map(|&i| rows[i].wfr).collect(),
                wwr: picked.iter().map(|&i| rows[i].wwr).collect(),
                performance: picked.iter().map(|&i| metrics.rows[i].performance).collect(),
                performance_no_overhang: picked.iter().map(|&i| metrics.rows[i].performance_no_overhang).collect(),
                cdh_over_tdh: picked.iter().map(|&i| metrics.rows[i].cdh_over_tdh).collect(),
                relative_depth: picked.iter().map(|&i| metrics.rows[i].relative_depth).collect(),
                optimum_wfr: o.wfr_opt_with_overhang,
                optimum_wfr_no_overhang: o.wfr_opt_without_overhang,
            }
        })
        .collect();
    FigureData {
        windowless_tdh: metrics.windowless_tdh,
        best_tdh: metrics.best_tdh,
        orientations: optima.iter().map(|o| o.orientation).collect(),
        optimum_wfr: optima.iter().map(|o| o.wfr_opt_with_overhang).collect(),
        optimum_wfr_no_overhang: optima.iter().map(|o| o.wfr_opt_without_overhang).collect(),
        optimum_relative_depth: optima.iter().map(|o| o.relative_depth).collect(),
        series,
    }
}

/// One parsed line of `optima.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimumRecord {
    pub orientation: f64,
    pub wfr_with: f64,
    pub d_opt: f64,
    pub relative_depth: f64,
    pub tdh_with: f64,
    pub wfr_without: f64,
    pub tdh_without: f64,
}

pub fn read_optima(dir: &Path) -> Result<Vec<OptimumRecord>, ReportError> {
    let path = dir.join(OPTIMA_CSV);
    if !path.is_file() {
        return Err(ReportError::Missing(path.display().to_string()));
    }
    let text = std::fs::read_to_string(&path).map_err(|source| ReportError::Io { path: path.display().to_string(), source })?;
    parse_optima(&text)
}

pub fn parse_optima(text: &str) -> Result<Vec<OptimumRecord>, ReportError> {
    let mut lines = text.lines().enumerate();
    let fmt_err = |line: usize, reason: String| ReportError::Format { file: OPTIMA_CSV.into(), line, reason };
    match lines.next() {
        Some((_, h)) if h.trim() == OPTIMA_HEADER => {}
        _ => return Err(fmt_err(1, "unexpected header".into())),
    }
    let mut out = Vec::new();
    for (i, line) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != OPTIMA_HEADER.split(',').count() {
            return Err(fmt_err(i + 1, format!("expected 14 cells, found {}", cells.len())));
        }
        let num = |k: usize| cells[k].trim().parse::<f64>().map_err(|_| fmt_err(i + 1, format!("bad number {:?}", cells[k])));
        out.push(OptimumRecord {
            orientation: num(0)?,
            wfr_with: num(1)?,
            d_opt: num(3)?,
            relative_depth: num(4)?,
            tdh_with: num(5)?,
            wfr_without: num(9)?,
            tdh_without: num(11)?,
        });
    }
    if out.is_empty() {
        return Err(ReportError::Empty(OPTIMA_CSV.into()));
    }
    Ok(out)
}

const CARDINALS: [(&str, f64); 8] =
    [("N", 0.0), ("NE", 45.0), ("E", 90.0), ("SE", 135.0), ("S", 180.0), ("SW", 225.0), ("W", 270.0), ("NW", 315.0)];

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

/// Human-readable summary: optimum WFR at the cardinal directions and the
/// orientations needing the deepest overhangs.
pub fn summary(optima: &[OptimumRecord]) -> Result<String, ReportError> {
    if optima.is_empty() {
        return Err(ReportError::Empty(OPTIMA_CSV.into()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "orientation  nearest°  WFR with overhang  relative depth  WFR without overhang");
    for (label, angle) in CARDINALS {
        let o = optima
            .iter()
            .min_by(|a, b| angular_distance(a.orientation, angle).total_cmp(&angular_distance(b.orientation, angle)))
            .expect("non-empty");
        let _ = writeln!(
            out,
            "{label:<11}  {:>8}  {:>17.3}  {:>14.3}  {:>20.3}",
            format_sig6(o.orientation),
            o.wfr_with,
            o.relative_depth,
            o.wfr_without
        );
    }
    let deepest = deepest_overhangs(optima, 5);
    let top = &optima[deepest[0]];
    let _ = writeln!(
        out,
        "\nlargest relative overhang depth: {:.3} at {}° (d = {} m)",
        top.relative_depth,
        format_sig6(top.orientation),
        format_sig6(top.d_opt)
    );
    let _ = writeln!(out, "deepest overhangs:");
    for &i in &deepest {
        let o = &optima[i];
        let _ = writeln!(out, "  {:>5}°  relative depth {:.3}  WFR {:.3}", format_sig6(o.orientation), o.relative_depth, o.wfr_with);
    }
    Ok(out)
}

/// Indices of the `n` largest relative depths, deepest first, ties by orientation.
pub fn deepest_overhangs(optima: &[OptimumRecord], n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..optima.len()).collect();
    idx.sort_by(|&a, &b| {
        optima[b]
            .relative_depth
            .total_cmp(&optima[a].relative_depth)
            .then(optima[a].orientation.total_cmp(&optima[b].orientation))
    });
    idx.truncate(n);
    idx
}
