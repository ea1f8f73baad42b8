//! Hourly weather input: EPW ingestion, serialization and the running-mean
//! outdoor temperature used by the adaptive comfort limits.
//!
//! Only the four fields the room model consumes are kept per hour: dry bulb,
//! global horizontal, direct normal and diffuse horizontal irradiance.
//! EPW hour `H` labels the interval ending at `H:00` local standard time; the
//! record at index `i` therefore covers clock time `i % 24 .. i % 24 + 1` of
//! day `i / 24`.

pub mod synthetic;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

pub const HOURS_PER_YEAR: usize = 8760;
pub const DAYS_PER_YEAR: usize = 365;

/// Cumulative day-of-year at the start of each month (non-leap year).
const MONTH_START: [usize; 13] = [0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334, 365];

/// Irradiance values at or above this are EPW missing-value sentinels.
const IRRADIANCE_SENTINEL: f64 = 9999.0;
/// Maximum share of rows with repaired irradiance sentinels.
const MAX_MISSING_SHARE: f64 = 0.05;

const HEADER_LINES: usize = 8;

#[derive(Debug, Error)]
pub enum WeatherError {
    #[error("cannot read weather file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed EPW header at line {line}: {reason}")]
    Header { line: usize, reason: String },
    #[error("EPW must contain {HOURS_PER_YEAR} data rows, found {found}")]
    RowCount { found: usize },
    #[error("unparseable value {value:?} at data row {row}, column {column}")]
    Field { row: usize, column: usize, value: String },
    #[error("value {value} out of range at data row {row}, column {column}")]
    OutOfRange { row: usize, column: usize, value: f64 },
    #[error("{count} of {HOURS_PER_YEAR} rows carry missing irradiance, more than 5%")]
    TooManyMissing { count: usize },
    #[error("invalid site: {0}")]
    Site(String),
    #[error("running-mean weight must lie in (0, 1), got {0}")]
    Alpha(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Site {
    /// Degrees north.
    pub latitude: f64,
    /// Degrees east.
    pub longitude: f64,
    /// Hours from UTC of the file's local standard time.
    pub utc_offset: f64,
    /// Metres above sea level.
    pub elevation: f64,
}

impl Site {
    pub fn new(latitude: f64, longitude: f64, utc_offset: f64, elevation: f64) -> Result<Self, WeatherError> {
        if !(-90.0..=90.0).contains(&latitude) {
            return Err(WeatherError::Site(format!("latitude {latitude} outside [-90, 90]")));
        }
        if !(-180.0..=180.0).contains(&longitude) {
            return Err(WeatherError::Site(format!("longitude {longitude} outside [-180, 180]")));
        }
        if !(-12.0..=14.0).contains(&utc_offset) {
            return Err(WeatherError::Site(format!("utc offset {utc_offset} outside [-12, 14]")));
        }
        if !elevation.is_finite() {
            return Err(WeatherError::Site("elevation is not finite".into()));
        }
        Ok(Self { latitude, longitude, utc_offset, elevation })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HourlyRecord {
    /// °C
    pub dry_bulb: f64,
    /// W/m², global horizontal
    pub ghi: f64,
    /// W/m², direct normal
    pub dni: f64,
    /// W/m², diffuse horizontal
    pub dhi: f64,
}

/// One non-leap year of hourly records plus site metadata. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherSeries {
    pub location: String,
    pub site: Site,
    records: Vec<HourlyRecord>,
    repaired: usize,
}

impl WeatherSeries {
    pub fn new(location: impl Into<String>, site: Site, records: Vec<HourlyRecord>) -> Result<Self, WeatherError> {
        if records.len() != HOURS_PER_YEAR {
            return Err(WeatherError::RowCount { found: records.len() });
        }
        for (i, r) in records.iter().enumerate() {
            check_record(i + 1, r)?;
        }
        Ok(Self { location: location.into(), site, records, repaired: 0 })
    }

    pub fn records(&self) -> &[HourlyRecord] {
        &self.records
    }

    /// Number of rows whose irradiance sentinels were replaced by zero while parsing.
    pub fn repaired_rows(&self) -> usize {
        self.repaired
    }

    pub fn dry_bulb(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.dry_bulb)
    }

    pub fn annual_mean_dry_bulb(&self) -> f64 {
        self.dry_bulb().sum::<f64>() / HOURS_PER_YEAR as f64
    }

    pub fn dry_bulb_range(&self) -> (f64, f64) {
        self.dry_bulb()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)))
    }

    /// Daily mean dry bulb, 365 values.
    pub fn daily_means(&self) -> Vec<f64> {
        self.records
            .chunks_exact(24)
            .map(|day| day.iter().map(|r| r.dry_bulb).sum::<f64>() / 24.0)
            .collect()
    }
}

fn check_record(row: usize, r: &HourlyRecord) -> Result<(), WeatherError> {
    if !(-60.0..=60.0).contains(&r.dry_bulb) {
        return Err(WeatherError::OutOfRange { row, column: 7, value: r.dry_bulb });
    }
    for (column, value) in [(14, r.ghi), (15, r.dni), (16, r.dhi)] {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(WeatherError::OutOfRange { row, column, value });
        }
    }
    Ok(())
}

/// Zero-based day of year for an hour index.
pub fn day_of_hour(hour_index: usize) -> usize {
    hour_index / 24
}

/// Zero-based month (0 = January) for a zero-based day of year.
pub fn month_of_day(day: usize) -> usize {
    MONTH_START[1..].iter().position(|&end| day < end).unwrap_or(11)
}

/// (month 1..=12, day of month 1..=31) for a zero-based day of year.
pub fn calendar_date(day: usize) -> (usize, usize) {
    let m = month_of_day(day);
    (m + 1, day - MONTH_START[m] + 1)
}

/// Hour index range covering a zero-based month.
pub fn month_hours(month: usize) -> std::ops::Range<usize> {
    MONTH_START[month] * 24..MONTH_START[month + 1] * 24
}

pub fn read_epw(path: impl AsRef<Path>) -> Result<WeatherSeries, WeatherError> {
    let path = path.as_ref();
    let raw = std::fs::read(path).map_err(|source| WeatherError::Io { path: path.display().to_string(), source })?;
    parse_epw(&raw)
}

/// Parses an EPW file. Irradiance sentinels (9999) become 0; more than 5% of
/// affected rows is an error.
pub fn parse_epw(raw: &[u8]) -> Result<WeatherSeries, WeatherError> {
    let text = String::from_utf8_lossy(raw);
    let mut lines = text.lines();

    let location_line = lines.next().ok_or_else(|| WeatherError::Header { line: 1, reason: "empty input".into() })?;
    let (location, site) = parse_location(location_line)?;
    for line in 2..=HEADER_LINES {
        if lines.next().is_none() {
            return Err(WeatherError::Header { line, reason: "header ends early".into() });
        }
    }

    let mut records = Vec::with_capacity(HOURS_PER_YEAR);
    let mut repaired = 0;
    for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let row = i + 1;
        if records.len() == HOURS_PER_YEAR {
            // keep counting so the error reports the real length
            records.push(HourlyRecord { dry_bulb: 0.0, ghi: 0.0, dni: 0.0, dhi: 0.0 });
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let field = |column: usize| -> Result<f64, WeatherError> {
            let value = fields.get(column - 1).map(|s| s.trim()).unwrap_or("");
            value
                .parse::<f64>()
                .map_err(|_| WeatherError::Field { row, column, value: value.to_string() })
        };
        let dry_bulb = field(7)?;
        let mut missing = false;
        let mut irradiance = |column: usize| -> Result<f64, WeatherError> {
            let v = field(column)?;
            if v >= IRRADIANCE_SENTINEL {
                missing = true;
                Ok(0.0)
            } else if v < 0.0 {
                // "-0.00" appears in real files
                if v > -1e-9 {
                    Ok(0.0)
                } else {
                    Err(WeatherError::OutOfRange { row, column, value: v })
                }
            } else {
                Ok(v)
            }
        };
        let ghi = irradiance(14)?;
        let dni = irradiance(15)?;
        let dhi = irradiance(16)?;
        if missing {
            repaired += 1;
        }
        let record = HourlyRecord { dry_bulb, ghi, dni, dhi };
        check_record(row, &record)?;
        records.push(record);
    }
    if records.len() != HOURS_PER_YEAR {
        return Err(WeatherError::RowCount { found: records.len() });
    }
    if repaired as f64 > MAX_MISSING_SHARE * HOURS_PER_YEAR as f64 {
        return Err(WeatherError::TooManyMissing { count: repaired });
    }
    Ok(WeatherSeries { location, site, records, repaired })
}

fn parse_location(line: &str) -> Result<(String, Site), WeatherError> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.first() != Some(&"LOCATION") {
        return Err(WeatherError::Header { line: 1, reason: "first line must start with LOCATION".into() });
    }
    if fields.len() < 10 {
        return Err(WeatherError::Header { line: 1, reason: format!("expected 10 fields, found {}", fields.len()) });
    }
    let number = |pos: usize, name: &str| -> Result<f64, WeatherError> {
        fields[pos - 1].parse::<f64>().map_err(|_| WeatherError::Header {
            line: 1,
            reason: format!("{name} {:?} is not a number", fields[pos - 1]),
        })
    };
    let site = Site::new(number(7, "latitude")?, number(8, "longitude")?, number(9, "timezone")?, number(10, "elevation")?)
        .map_err(|e| WeatherError::Header { line: 1, reason: e.to_string() })?;
    Ok((fields[1].to_string(), site))
}

/// Writes a minimal but valid EPW document. Fields the model does not consume
/// carry the format's missing-value codes.
pub fn to_epw_string(series: &WeatherSeries) -> String {
    let s = &series.site;
    let mut out = String::with_capacity(HOURS_PER_YEAR * 120);
    let name = series.location.replace(',', " ");
    let _ = writeln!(out, "LOCATION,{name},-,-,synthetic,-,{},{},{},{}", s.latitude, s.longitude, s.utc_offset, s.elevation);
    out.push_str("DESIGN CONDITIONS,0\n");
    out.push_str("TYPICAL/EXTREME PERIODS,0\n");
    out.push_str("GROUND TEMPERATURES,0\n");
    out.push_str("HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0\n");
    out.push_str("COMMENTS 1,written by winshade\n");
    out.push_str("COMMENTS 2,\n");
    out.push_str("DATA PERIODS,1,1,Data,Sunday, 1/ 1,12/31\n");
    for (i, r) in series.records.iter().enumerate() {
        let (month, day) = calendar_date(day_of_hour(i));
        let hour = i % 24 + 1;
        let _ = writeln!(
            out,
            "1999,{month},{day},{hour},60,?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9,{},99.9,999,999999,9999,9999,9999,{},{},{},999999,999999,999999,9999,999,999,99,99,9999,99999,9,999999999,999,0.999,999,99,999,999,99",
            r.dry_bulb, r.ghi, r.dni, r.dhi
        );
    }
    out
}

/// Daily running-mean outdoor temperature, 365 values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunningMeanSeries {
    pub values: Vec<f64>,
}

pub const DEFAULT_RUNNING_MEAN_ALPHA: f64 = 0.8;

/// Exponentially weighted running mean
/// `T_rm[d] = (1 - alpha) * T_dm[d - 1] + alpha * T_rm[d - 1]`,
/// seeded with the periodic steady state of the wrapped year so that
/// `T_rm[0]` follows on from December.
pub fn running_mean(series: &WeatherSeries, alpha: f64) -> Result<RunningMeanSeries, WeatherError> {
    running_mean_of_daily(&series.daily_means(), alpha)
}

pub fn running_mean_of_daily(daily: &[f64], alpha: f64) -> Result<RunningMeanSeries, WeatherError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(WeatherError::Alpha(alpha));
    }
    let n = daily.len();
    if n == 0 {
        return Ok(RunningMeanSeries { values: Vec::new() });
    }
    // T_rm[0] = sum_k (1-a) a^(k-1) T_dm[-k] / (1 - a^n), indices wrapped
    let mut seed = 0.0;
    let mut weight = 1.0 - alpha;
    for k in 1..=n {
        seed += weight * daily[(n - k % n) % n];
        weight *= alpha;
    }
    let seed = seed / (1.0 - alpha.powi(n as i32));

    let mut values = Vec::with_capacity(n);
    values.push(seed);
    for d in 1..n {
        let prev = values[d - 1];
        values.push((1.0 - alpha) * daily[d - 1] + alpha * prev);
    }
    // rounding in the geometric sum can push a value a hair outside the data range
    let (lo, hi) = daily.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &t| (l.min(t), h.max(t)));
    for v in &mut values {
        *v = v.clamp(lo, hi);
    }
    Ok(RunningMeanSeries { values })
}
