//! The parametric study: every facade orientation × window width, each with
//! its own best overhang depth, then the per-orientation optima and the
//! relative metrics used for plotting.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::comfort::{comfort_limits, degree_hours, ComfortBand, ComfortCategory, DiscomfortScore};
use crate::solar::{FacadeSeries, SunPath, DEFAULT_ALBEDO};
use crate::weather::{running_mean, WeatherError, WeatherSeries, DEFAULT_RUNNING_MEAN_ALPHA};
use crate::zone::{build_zone, ground_temperature, hourly_gains_into, RoomScenario, ZoneError, ZoneModel};

const GOLDEN: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("scenario orientation {orientation}°, width {width} m: {source}")]
    Scenario {
        orientation: f64,
        width: f64,
        #[source]
        source: ZoneError,
    },
    #[error(transparent)]
    Zone(#[from] ZoneError),
    #[error(transparent)]
    Weather(#[from] WeatherError),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("orientation {orientation}° does not cover every grid width")]
    IncompleteCoverage { orientation: f64 },
    #[error("windowless and best scores are equal ({0} K·h); relative performance is undefined")]
    Degenerate(f64),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// Overhang depth search: a coarse scan over `[0, d_max]` then golden-section
/// refinement inside the best coarse bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepthSearch {
    pub d_max: f64,
    pub coarse_step: f64,
    pub refine_tolerance: f64,
}

impl Default for DepthSearch {
    fn default() -> Self {
        Self { d_max: 3.0, coarse_step: 0.10, refine_tolerance: 0.005 }
    }
}

impl DepthSearch {
    pub fn validate(&self) -> Result<(), SweepError> {
        if !(self.d_max > 0.0 && self.coarse_step > 0.0 && self.refine_tolerance > 0.0) {
            return Err(SweepError::Grid(format!("depth search values must be positive: {self:?}")));
        }
        Ok(())
    }

    /// Coarse depths, always starting at 0 and ending at `d_max`.
    pub fn coarse_depths(&self) -> Vec<f64> {
        let n = (self.d_max / self.coarse_step + 1e-9).floor() as usize;
        let mut out: Vec<f64> = (0..=n).map(|k| k as f64 * self.coarse_step).collect();
        if self.d_max - out[n] > 1e-9 {
            out.push(self.d_max);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioGrid {
    pub orientations: Vec<f64>,
    pub widths: Vec<f64>,
    pub depth_search: DepthSearch,
}

impl Default for ScenarioGrid {
    /// 0°..358° in 2° steps; 0.01 m then 0.10..7.00 m in 0.10 m steps.
    fn default() -> Self {
        Self { orientations: orientation_steps(2.0), widths: width_steps(0.01, 0.10, 7.00), depth_search: DepthSearch::default() }
    }
}

/// Orientations from North clockwise with a fixed step, below 360°.
pub fn orientation_steps(step: f64) -> Vec<f64> {
    let n = (360.0 / step - 1e-9).ceil() as usize;
    (0..n).map(|k| round_grid(k as f64 * step)).collect()
}

/// `first`, then multiples of `step` above it up to `max`.
pub fn width_steps(first: f64, step: f64, max: f64) -> Vec<f64> {
    let mut out = vec![first];
    let mut k = 1;
    loop {
        let w = round_grid(k as f64 * step);
        if w > max + 1e-9 {
            break;
        }
        if w > first + 1e-9 {
            out.push(w);
        }
        k += 1;
    }
    out
}

fn round_grid(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

impl ScenarioGrid {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.orientations.is_empty() || self.widths.is_empty() {
            return Err(SweepError::Grid("grid needs at least one orientation and one width".into()));
        }
        if let Some(o) = self.orientations.iter().find(|o| !(0.0..360.0).contains(*o)) {
            return Err(SweepError::Grid(format!("orientation {o} outside [0, 360)")));
        }
        if let Some(w) = self.widths.iter().find(|w| !(0.01 - 1e-12..=7.0 + 1e-12).contains(*w)) {
            return Err(SweepError::Grid(format!("width {w} outside [0.01, 7.00]")));
        }
        self.depth_search.validate()
    }

    pub fn len(&self) -> usize {
        self.orientations.len() * self.widths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudySettings {
    pub albedo: f64,
    pub category: ComfortCategory,
    pub running_mean_alpha: f64,
    /// Length that overhang depths are divided by for "relative depth", m.
    /// `None` uses the window height.
    pub depth_normalizer: Option<f64>,
}

impl Default for StudySettings {
    fn default() -> Self {
        Self { albedo: DEFAULT_ALBEDO, category: ComfortCategory::II, running_mean_alpha: DEFAULT_RUNNING_MEAN_ALPHA, depth_normalizer: None }
    }
}

/// Everything that stays fixed across scenarios: the weather, its sun path,
/// the comfort band and the room template.
#[derive(Debug, Clone)]
pub struct Study {
    room: RoomScenario,
    settings: StudySettings,
    weather: WeatherSeries,
    sun: SunPath,
    band: ComfortBand,
    outdoor: Vec<f64>,
    ground: f64,
}

impl Study {
    pub fn new(weather: &WeatherSeries, room: RoomScenario, settings: StudySettings) -> Result<Self, SweepError> {
        room.validate()?;
        let t_rm = running_mean(weather, settings.running_mean_alpha)?;
        Ok(Self {
            band: comfort_limits(&t_rm, settings.category),
            sun: SunPath::for_weather(weather),
            outdoor: weather.dry_bulb().collect(),
            ground: ground_temperature(weather),
            weather: weather.clone(),
            room,
            settings,
        })
    }

    pub fn room(&self) -> &RoomScenario {
        &self.room
    }

    pub fn settings(&self) -> &StudySettings {
        &self.settings
    }

    pub fn band(&self) -> &ComfortBand {
        &self.band
    }

    pub fn weather(&self) -> &WeatherSeries {
        &self.weather
    }

    pub fn depth_normalizer(&self) -> f64 {
        self.settings.depth_normalizer.unwrap_or(self.room.window_height)
    }

    pub fn scenario(&self, orientation: f64, width: f64, depth: f64) -> RoomScenario {
        RoomScenario { facade_azimuth: orientation, window_width: width, overhang_depth: depth, ..self.room.clone() }
    }

    pub fn facade(&self, orientation: f64) -> FacadeSeries {
        FacadeSeries::new(&self.weather, &self.sun, orientation, self.settings.albedo)
    }

    /// Operative temperature series of one scenario.
    pub fn operative(&self, orientation: f64, width: f64, depth: f64) -> Result<Vec<f64>, ZoneError> {
        let facade = self.facade(orientation);
        let mut eval = WidthEvaluator::new(self, &facade, width)?;
        eval.run(depth)?;
        Ok(eval.operative)
    }

    pub fn evaluate(&self, orientation: f64, width: f64, depth: f64) -> Result<DiscomfortScore, ZoneError> {
        let facade = self.facade(orientation);
        WidthEvaluator::new(self, &facade, width)?.score(depth)
    }

    /// Score of the same room with no opening at all.
    pub fn windowless_score(&self) -> Result<DiscomfortScore, ZoneError> {
        self.evaluate(self.room.facade_azimuth, 0.0, 0.0)
    }

    pub fn optimize_overhang(&self, orientation: f64, width: f64, search: &DepthSearch) -> Result<OverhangOptimum, ZoneError> {
        let facade = self.facade(orientation);
        optimize_with(&mut WidthEvaluator::new(self, &facade, width)?, search)
    }
}

/// Reusable buffers for scoring many depths at one orientation and width.
struct WidthEvaluator<'a> {
    study: &'a Study,
    facade: &'a FacadeSeries,
    scenario: RoomScenario,
    zone: ZoneModel,
    gains: Vec<f64>,
    operative: Vec<f64>,
}

impl<'a> WidthEvaluator<'a> {
    fn new(study: &'a Study, facade: &'a FacadeSeries, width: f64) -> Result<Self, ZoneError> {
        let scenario = study.scenario(facade.azimuth, width, 0.0);
        let zone = build_zone(&scenario)?;
        Ok(Self { study, facade, scenario, zone, gains: Vec::new(), operative: Vec::new() })
    }

    fn run(&mut self, depth: f64) -> Result<(), ZoneError> {
        self.scenario.overhang_depth = depth;
        hourly_gains_into(&self.zone, &self.scenario, self.facade, &mut self.gains);
        self.zone.run_year_into(&self.study.outdoor, self.study.ground, &self.gains, &mut self.operative)
    }

    fn score(&mut self, depth: f64) -> Result<DiscomfortScore, ZoneError> {
        self.run(depth)?;
        Ok(degree_hours(&self.operative, &self.study.band).expect("year-long series aligns with the band"))
    }
}

/// Result of the depth search for one orientation and width.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverhangOptimum {
    pub depth: f64,
    pub score: DiscomfortScore,
    pub no_overhang: DiscomfortScore,
    /// Every evaluated depth with its score, sorted by depth.
    pub evaluations: Vec<(f64, DiscomfortScore)>,
}

fn optimize_with(eval: &mut WidthEvaluator<'_>, search: &DepthSearch) -> Result<OverhangOptimum, ZoneError> {
    let coarse = search.coarse_depths();
    let mut evaluations = Vec::with_capacity(coarse.len() + 16);
    for &d in &coarse {
        evaluations.push((d, eval.score(d)?));
    }
    let no_overhang = evaluations[0].1;

    let best = argmin(&evaluations);
    let mut lo = coarse[best.saturating_sub(1)];
    let mut hi = coarse[(best + 1).min(coarse.len() - 1)];
    if hi - lo > search.refine_tolerance {
        let mut x1 = hi - GOLDEN * (hi - lo);
        let mut x2 = lo + GOLDEN * (hi - lo);
        let mut f1 = eval.score(x1)?;
        let mut f2 = eval.score(x2)?;
        evaluations.push((x1, f1));
        evaluations.push((x2, f2));
        while hi - lo > search.refine_tolerance {
            if f1.tdh <= f2.tdh {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - GOLDEN * (hi - lo);
                f1 = eval.score(x1)?;
                evaluations.push((x1, f1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + GOLDEN * (hi - lo);
                f2 = eval.score(x2)?;
                evaluations.push((x2, f2));
            }
        }
    }
    evaluations.sort_by(|a, b| a.0.total_cmp(&b.0));
    evaluations.dedup_by(|a, b| a.0 == b.0);
    let (depth, score) = evaluations[argmin(&evaluations)];
    Ok(OverhangOptimum { depth, score, no_overhang, evaluations })
}

/// First index of the smallest TDH; with depths ascending, ties go to the smaller depth.
fn argmin(evaluations: &[(f64, DiscomfortScore)]) -> usize {
    let mut best = 0;
    for (i, (d, s)) in evaluations.iter().enumerate().skip(1) {
        let (bd, bs) = evaluations[best];
        if s.tdh < bs.tdh || (s.tdh == bs.tdh && *d < bd) {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub orientation: f64,
    pub width: f64,
    pub wfr: f64,
    pub wwr: f64,
    pub d_opt: f64,
    pub relative_depth: f64,
    pub hdh: f64,
    pub cdh: f64,
    pub tdh: f64,
    pub hdh_no_overhang: f64,
    pub cdh_no_overhang: f64,
    pub tdh_no_overhang: f64,
}

impl SweepRow {
    pub fn cdh_over_tdh(&self) -> f64 {
        DiscomfortScore { hdh: self.hdh, cdh: self.cdh, tdh: self.tdh }.cooling_share()
    }
}

fn make_row(study: &Study, orientation: f64, width: f64, opt: &OverhangOptimum) -> SweepRow {
    let scenario = study.scenario(orientation, width, opt.depth);
    SweepRow {
        orientation,
        width,
        wfr: scenario.wfr(),
        wwr: scenario.wwr(),
        d_opt: opt.depth,
        relative_depth: opt.depth / study.depth_normalizer(),
        hdh: opt.score.hdh,
        cdh: opt.score.cdh,
        tdh: opt.score.tdh,
        hdh_no_overhang: opt.no_overhang.hdh,
        cdh_no_overhang: opt.no_overhang.cdh,
        tdh_no_overhang: opt.no_overhang.tdh,
    }
}

/// One row per (orientation, width), ordered by orientation then width as
/// listed in the grid. `workers = 0` uses all cores; `1` runs sequentially.
/// The rows do not depend on the worker count.
pub fn run_sweep(grid: &ScenarioGrid, study: &Study, workers: usize) -> Result<Vec<SweepRow>, SweepError> {
    grid.validate()?;
    let per_orientation = |orientation: f64| -> Result<Vec<SweepRow>, SweepError> {
        let facade = study.facade(orientation);
        grid.widths
            .iter()
            .map(|&width| {
                let wrap = |source| SweepError::Scenario { orientation, width, source };
                let mut eval = WidthEvaluator::new(study, &facade, width).map_err(wrap)?;
                let opt = optimize_with(&mut eval, &grid.depth_search).map_err(wrap)?;
                Ok(make_row(study, orientation, width, &opt))
            })
            .collect()
    };

    let chunks: Vec<Vec<SweepRow>> = if workers == 1 {
        grid.orientations.iter().map(|&o| per_orientation(o)).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SweepError::Pool(e.to_string()))?;
        pool.install(|| grid.orientations.par_iter().map(|&o| per_orientation(o)).collect::<Result<_, _>>())?
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Best window width for one orientation, with and without an overhang.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrientationOptimum {
    pub orientation: f64,
    pub width_with_overhang: f64,
    pub wfr_opt_with_overhang: f64,
    pub d_opt: f64,
    pub relative_depth: f64,
    pub tdh_with_overhang: f64,
    pub cdh_over_tdh: f64,
    pub width_without_overhang: f64,
    pub wfr_opt_without_overhang: f64,
    pub tdh_without_overhang: f64,
    /// The with-overhang optimum sits at the smallest or largest width of the grid.
    pub boundary_with_overhang: bool,
    pub boundary_without_overhang: bool,
}

fn orientation_key(o: f64) -> i64 {
    (o * 1e6).round() as i64
}

/// Picks, per orientation, the width minimizing TDH with the optimized
/// overhang and the width minimizing TDH without one. Ties go to the smaller width.
pub fn orientation_optima(rows: &[SweepRow]) -> Result<Vec<OrientationOptimum>, SweepError> {
    let mut groups: BTreeMap<i64, Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        groups.entry(orientation_key(r.orientation)).or_default().push(r);
    }
    let mut all_widths: Vec<f64> = rows.iter().map(|r| r.width).collect();
    all_widths.sort_by(f64::total_cmp);
    all_widths.dedup();

    groups
        .values()
        .map(|group| {
            let orientation = group[0].orientation;
            let mut widths: Vec<f64> = group.iter().map(|r| r.width).collect();
            widths.sort_by(f64::total_cmp);
            widths.dedup();
            if widths != all_widths || group.len() != all_widths.len() {
                return Err(SweepError::IncompleteCoverage { orientation });
            }
            let pick = |key: fn(&SweepRow) -> f64| -> &SweepRow {
                group
                    .iter()
                    .copied()
                    .reduce(|best, r| if key(r) < key(best) || (key(r) == key(best) && r.width < best.width) { r } else { best })
                    .expect("non-empty group")
            };
            let with = pick(|r| r.tdh);
            let without = pick(|r| r.tdh_no_overhang);
            let edge = |w: f64| w == all_widths[0] || w == all_widths[all_widths.len() - 1];
            Ok(OrientationOptimum {
                orientation,
                width_with_overhang: with.width,
                wfr_opt_with_overhang: with.wfr,
                d_opt: with.d_opt,
                relative_depth: with.relative_depth,
                tdh_with_overhang: with.tdh,
                cdh_over_tdh: with.cdh_over_tdh(),
                width_without_overhang: without.width,
                wfr_opt_without_overhang: without.wfr,
                tdh_without_overhang: without.tdh_no_overhang,
                boundary_with_overhang: edge(with.width),
                boundary_without_overhang: edge(without.width),
            })
        })
        .collect()
}

/// Relative thermal performance: 0 for the windowless room, 1 for the best
/// row of the whole sweep; worse-than-windowless rows go negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelativeMetrics {
    pub windowless_tdh: f64,
    pub best_tdh: f64,
    /// Parallel to the sweep rows.
    pub rows: Vec<RowMetrics>,
    /// Parallel to the optima.
    pub optima: Vec<OptimumMetrics>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowMetrics {
    pub performance: f64,
    pub performance_no_overhang: f64,
    pub cdh_over_tdh: f64,
    pub relative_depth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimumMetrics {
    pub performance_with_overhang: f64,
    pub performance_without_overhang: f64,
}

pub fn relative_metrics(rows: &[SweepRow], optima: &[OrientationOptimum], windowless_tdh: f64) -> Result<RelativeMetrics, SweepError> {
    let best_tdh = rows.iter().map(|r| r.tdh).fold(f64::INFINITY, f64::min);
    let span = windowless_tdh - best_tdh;
    if !(span != 0.0 && span.is_finite()) {
        return Err(SweepError::Degenerate(windowless_tdh));
    }
    let perf = |tdh: f64| (windowless_tdh - tdh) / span;
    Ok(RelativeMetrics {
        windowless_tdh,
        best_tdh,
        rows: rows
            .iter()
            .map(|r| RowMetrics {
                performance: perf(r.tdh),
                performance_no_overhang: perf(r.tdh_no_overhang),
                cdh_over_tdh: r.cdh_over_tdh(),
                relative_depth: r.relative_depth,
            })
            .collect(),
        optima: optima
            .iter()
            .map(|o| OptimumMetrics {
                performance_with_overhang: perf(o.tdh_with_overhang),
                performance_without_overhang: perf(o.tdh_without_overhang),
            })
            .collect(),
    })
}
