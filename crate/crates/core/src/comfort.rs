//! Adaptive comfort band for naturally ventilated spaces and the
//! degree-hours-of-discomfort objective.

use serde::Serialize;
use thiserror::Error;

use crate::weather::{day_of_hour, month_hours, RunningMeanSeries};

#[derive(Debug, Error, PartialEq)]
pub enum ComfortError {
    #[error("operative series has {hours} hours but the band covers {days} days")]
    Misaligned { hours: usize, days: usize },
}

/// Comfort category; sets the half-width of the band around the comfort temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ComfortCategory {
    I,
    #[default]
    II,
    III,
}

impl ComfortCategory {
    pub fn half_width(self) -> f64 {
        match self {
            Self::I => 2.0,
            Self::II => 3.0,
            Self::III => 4.0,
        }
    }
}

impl std::str::FromStr for ComfortCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Self::I),
            "II" | "2" => Ok(Self::II),
            "III" | "3" => Ok(Self::III),
            other => Err(format!("unknown comfort category {other:?}")),
        }
    }
}

/// Running-mean range over which the upper limit follows the outdoor climate.
const UPPER_RANGE: (f64, f64) = (10.0, 30.0);
/// Running-mean range over which the lower limit follows the outdoor climate.
const LOWER_RANGE: (f64, f64) = (15.0, 30.0);

pub fn comfort_temperature(t_rm: f64) -> f64 {
    0.33 * t_rm + 18.8
}

/// Daily lower and upper operative-temperature limits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComfortBand {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ComfortBand {
    pub fn days(&self) -> usize {
        self.lower.len()
    }
}

/// Adaptive limits `T_c ± half_width`, `T_c = 0.33·T_rm + 18.8`. Outside the
/// applicability range each limit is held at its boundary value.
pub fn comfort_limits(t_rm: &RunningMeanSeries, category: ComfortCategory) -> ComfortBand {
    let half = category.half_width();
    let (lower, upper) = t_rm
        .values
        .iter()
        .map(|&t| {
            let lo = comfort_temperature(t.clamp(LOWER_RANGE.0, LOWER_RANGE.1)) - half;
            let hi = comfort_temperature(t.clamp(UPPER_RANGE.0, UPPER_RANGE.1)) + half;
            (lo, hi)
        })
        .unzip();
    ComfortBand { lower, upper }
}

/// Heating, cooling and total degree-hours of discomfort, K·h.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct DiscomfortScore {
    pub hdh: f64,
    pub cdh: f64,
    pub tdh: f64,
}

impl DiscomfortScore {
    pub fn new(hdh: f64, cdh: f64) -> Self {
        Self { hdh, cdh, tdh: hdh + cdh }
    }

    /// Share of the discomfort due to overheating; 0 when there is none at all.
    pub fn cooling_share(&self) -> f64 {
        if self.tdh > 0.0 {
            self.cdh / self.tdh
        } else {
            0.0
        }
    }
}

/// Accumulates hourly exceedances of the band of each hour's calendar day.
pub fn degree_hours(t_op: &[f64], band: &ComfortBand) -> Result<DiscomfortScore, ComfortError> {
    if band.upper.len() != band.lower.len() || t_op.len() != band.days() * 24 {
        return Err(ComfortError::Misaligned { hours: t_op.len(), days: band.days() });
    }
    Ok(accumulate(t_op, band, 0))
}

fn accumulate(t_op: &[f64], band: &ComfortBand, first_hour: usize) -> DiscomfortScore {
    let mut hdh = 0.0;
    let mut cdh = 0.0;
    for (i, &t) in t_op.iter().enumerate() {
        let day = day_of_hour(first_hour + i);
        hdh += (band.lower[day] - t).max(0.0);
        cdh += (t - band.upper[day]).max(0.0);
    }
    DiscomfortScore::new(hdh, cdh)
}

/// Degree-hours per calendar month of a full-year series.
pub fn monthly_degree_hours(t_op: &[f64], band: &ComfortBand) -> Result<Vec<DiscomfortScore>, ComfortError> {
    degree_hours(t_op, band)?;
    Ok((0..12)
        .map(|m| {
            let hours = month_hours(m);
            accumulate(&t_op[hours.clone()], band, hours.start)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn band_for(t_rm: f64, days: usize) -> ComfortBand {
        comfort_limits(&RunningMeanSeries { values: vec![t_rm; days] }, ComfortCategory::II)
    }

    #[test]
    fn band_at_twenty() {
        let b = band_for(20.0, 1);
        assert_abs_diff_eq!(comfort_temperature(20.0), 25.4, epsilon = 1e-12);
        assert_abs_diff_eq!(b.lower[0], 22.4, epsilon = 1e-12);
        assert_abs_diff_eq!(b.upper[0], 28.4, epsilon = 1e-12);
    }

    #[test]
    fn upper_limit_clamps_below_ten() {
        assert_eq!(band_for(10.0, 1).upper[0], band_for(9.0, 1).upper[0]);
        assert_eq!(band_for(31.0, 1).upper[0], band_for(30.0, 1).upper[0]);
        assert_eq!(band_for(12.0, 1).lower[0], band_for(15.0, 1).lower[0]);
    }

    #[test]
    fn category_ii_width_is_six_in_common_range() {
        let values: Vec<f64> = (0..=150).map(|i| 15.0 + i as f64 * 0.1).collect();
        let b = comfort_limits(&RunningMeanSeries { values }, ComfortCategory::II);
        for (lo, hi) in b.lower.iter().zip(&b.upper) {
            assert_abs_diff_eq!(hi - lo, 6.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn categories_order() {
        let rm = RunningMeanSeries { values: vec![18.0] };
        let i = comfort_limits(&rm, ComfortCategory::I);
        let iii = comfort_limits(&rm, ComfortCategory::III);
        assert!(iii.lower[0] < i.lower[0] && iii.upper[0] > i.upper[0]);
        assert_eq!("ii".parse::<ComfortCategory>().unwrap(), ComfortCategory::II);
    }

    #[test]
    fn inside_band_is_free() {
        let b = band_for(20.0, 2);
        let s = degree_hours(&[25.0; 48], &b).unwrap();
        assert_eq!(s, DiscomfortScore::default());
    }

    #[test]
    fn three_hot_hours() {
        let b = band_for(20.0, 2);
        let mut t = vec![25.0; 48];
        for h in [3, 17, 40] {
            t[h] = b.upper[0] + 2.0;
        }
        let s = degree_hours(&t, &b).unwrap();
        assert_abs_diff_eq!(s.cdh, 6.0, epsilon = 1e-12);
        assert_eq!(s.hdh, 0.0);
        assert_abs_diff_eq!(s.tdh, 6.0, epsilon = 1e-12);
    }

    #[test]
    fn bands_switch_at_midnight() {
        let b = ComfortBand { lower: vec![20.0, 22.0], upper: vec![26.0, 28.0] };
        let mut t = vec![21.0; 48];
        t[23] = 27.0; // last hour of day 0, above 26
        let s = degree_hours(&t, &b).unwrap();
        assert_abs_diff_eq!(s.cdh, 1.0);
        assert_abs_diff_eq!(s.hdh, 24.0);
    }

    #[test]
    fn misaligned_series() {
        let b = band_for(20.0, 2);
        assert_eq!(degree_hours(&[20.0; 47], &b), Err(ComfortError::Misaligned { hours: 47, days: 2 }));
    }

    #[test]
    fn cooling_share_of_zero_is_zero() {
        assert_eq!(DiscomfortScore::default().cooling_share(), 0.0);
        assert_eq!(DiscomfortScore::new(1.0, 3.0).cooling_share(), 0.75);
    }
}
