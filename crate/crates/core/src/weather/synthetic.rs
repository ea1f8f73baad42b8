//! Deterministic synthetic weather years.
//!
//! [`SyntheticClimate::coimbra`] reproduces the monthly climate normals of
//! Coimbra (central Portugal) with day-to-day temperature anomalies, cloudy
//! and clear days, a diurnal temperature wave and a clear-sky irradiance model
//! split into beam and diffuse with the Erbs correlation. It stands in for a
//! measured typical year when none is at hand; it is not a substitute for one
//! when absolute degree-hours matter.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{month_of_day, HourlyRecord, Site, WeatherSeries, DAYS_PER_YEAR, HOURS_PER_YEAR};
use crate::solar::{sun_for_record, SolarPosition};

const SOLAR_CONSTANT: f64 = 1367.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MonthlyNormals {
    /// Monthly mean dry bulb, °C.
    pub mean_temperature: [f64; 12],
    /// Mean daily max − min, K.
    pub daily_range: [f64; 12],
    /// Mean daily global horizontal irradiation, kWh/m².
    pub daily_irradiation: [f64; 12],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticClimate {
    pub location: String,
    pub site: Site,
    pub normals: MonthlyNormals,
    /// Standard deviation of the daily temperature anomaly, K.
    pub anomaly_sd: f64,
    /// Lag-one autocorrelation of the daily temperature anomaly.
    pub anomaly_persistence: f64,
    /// Standard deviation of the daily clearness factor.
    pub clearness_sd: f64,
}

impl SyntheticClimate {
    /// Coimbra, 40.20 N 8.42 W, UTC+0, 141 m.
    pub fn coimbra() -> Self {
        Self {
            location: "Coimbra (synthetic)".into(),
            site: Site { latitude: 40.20, longitude: -8.42, utc_offset: 0.0, elevation: 141.0 },
            normals: MonthlyNormals {
                mean_temperature: [10.0, 11.2, 13.3, 14.6, 16.9, 20.2, 21.9, 22.0, 20.6, 17.5, 13.6, 11.2],
                daily_range: [9.5, 10.0, 11.0, 11.0, 11.5, 12.5, 13.5, 13.5, 12.5, 11.0, 9.5, 9.0],
                daily_irradiation: [2.1, 3.0, 4.4, 5.4, 6.4, 7.1, 7.3, 6.5, 5.1, 3.5, 2.3, 1.9],
            },
            anomaly_sd: 1.8,
            anomaly_persistence: 0.75,
            clearness_sd: 0.25,
        }
    }

    pub fn generate(&self, seed: u64) -> WeatherSeries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let positions: Vec<SolarPosition> = (0..HOURS_PER_YEAR).map(|h| sun_for_record(&self.site, h)).collect();

        // daily temperature: interpolated normals plus AR(1) anomaly
        let mut anomaly = 0.0;
        let innovation_sd = self.anomaly_sd * (1.0 - self.anomaly_persistence.powi(2)).sqrt();
        let daily_mean: Vec<f64> = (0..DAYS_PER_YEAR)
            .map(|d| {
                let z: f64 = rng.sample(StandardNormal);
                anomaly = self.anomaly_persistence * anomaly + innovation_sd * z;
                interpolate_monthly(&self.normals.mean_temperature, d) + anomaly
            })
            .collect();

        // clearness per day, rescaled so each month meets its irradiation normal
        let clear_daily: Vec<f64> = (0..DAYS_PER_YEAR)
            .map(|d| (0..24).map(|h| clear_sky_ghi(&positions[d * 24 + h])).sum::<f64>() / 1000.0)
            .collect();
        let mut clearness = vec![0.0; DAYS_PER_YEAR];
        for month in 0..12 {
            let days: Vec<usize> = (0..DAYS_PER_YEAR).filter(|&d| month_of_day(d) == month).collect();
            let clear: f64 = days.iter().map(|&d| clear_daily[d]).sum::<f64>() / days.len() as f64;
            let target = (self.normals.daily_irradiation[month] / clear).min(0.95);
            for &d in &days {
                let z: f64 = rng.sample(StandardNormal);
                clearness[d] = (target + self.clearness_sd * z).clamp(0.08, 1.0);
            }
            for _ in 0..4 {
                let got: f64 = days.iter().map(|&d| clearness[d] * clear_daily[d]).sum::<f64>() / days.len() as f64;
                let scale = self.normals.daily_irradiation[month] / got;
                for &d in &days {
                    clearness[d] = (clearness[d] * scale).clamp(0.05, 1.0);
                }
            }
        }

        let mut records = Vec::with_capacity(HOURS_PER_YEAR);
        for d in 0..DAYS_PER_YEAR {
            let month = month_of_day(d);
            let range = self.normals.daily_range[month] * (0.55 + 0.6 * clearness[d]);
            for h in 0..24 {
                let clock = h as f64 + 0.5;
                let dry_bulb = daily_mean[d] + 0.5 * range * (2.0 * PI * (clock - 15.0) / 24.0).cos();
                let pos = &positions[d * 24 + h];
                let ghi = clearness[d] * clear_sky_ghi(pos);
                let (dni, dhi) = split_global(ghi, pos, d + 1);
                records.push(HourlyRecord { dry_bulb, ghi, dni, dhi });
            }
        }
        WeatherSeries::new(self.location.clone(), self.site, records).expect("synthetic generator produces valid records")
    }
}

/// Piecewise-linear interpolation between mid-month values, wrapping the year.
fn interpolate_monthly(values: &[f64; 12], day: usize) -> f64 {
    const MID: [f64; 12] = [15.0, 44.5, 74.0, 104.5, 135.0, 165.5, 196.0, 227.0, 257.5, 288.0, 318.5, 349.0];
    let t = day as f64 + 0.5;
    let next = MID.iter().position(|&m| m > t).unwrap_or(12);
    let (m0, v0, m1, v1) = match next {
        0 => (MID[11] - 365.0, values[11], MID[0], values[0]),
        12 => (MID[11], values[11], MID[0] + 365.0, values[0]),
        i => (MID[i - 1], values[i - 1], MID[i], values[i]),
    };
    v0 + (v1 - v0) * (t - m0) / (m1 - m0)
}

/// Haurwitz clear-sky global horizontal irradiance, W/m².
pub fn clear_sky_ghi(pos: &SolarPosition) -> f64 {
    let cos_z = pos.altitude.to_radians().sin();
    if cos_z <= 0.0 {
        0.0
    } else {
        1098.0 * cos_z * (-0.057 / cos_z).exp()
    }
}

/// Splits global horizontal into (direct normal, diffuse horizontal) with the Erbs correlation.
pub fn split_global(ghi: f64, pos: &SolarPosition, day_of_year: usize) -> (f64, f64) {
    let sin_alt = pos.altitude.to_radians().sin();
    if ghi <= 0.0 || sin_alt <= 0.0 {
        return (0.0, 0.0);
    }
    let extraterrestrial = SOLAR_CONSTANT * (1.0 + 0.033 * (2.0 * PI * day_of_year as f64 / 365.0).cos()) * sin_alt;
    let kt = (ghi / extraterrestrial).clamp(0.0, 1.0);
    let diffuse_fraction = if kt <= 0.22 {
        1.0 - 0.09 * kt
    } else if kt <= 0.80 {
        0.9511 - 0.1604 * kt + 4.388 * kt.powi(2) - 16.638 * kt.powi(3) + 12.336 * kt.powi(4)
    } else {
        0.165
    };
    let dhi = ghi * diffuse_fraction;
    // low sun: keep the beam finite
    let dni = if pos.altitude < 2.0 { 0.0 } else { ((ghi - dhi) / sin_alt).min(1100.0) };
    let dhi = if pos.altitude < 2.0 { ghi } else { ghi - dni * sin_alt };
    (dni, dhi)
}

/// Constant dry bulb, no sun.
pub fn constant(site: Site, dry_bulb: f64) -> WeatherSeries {
    let records = vec![HourlyRecord { dry_bulb, ghi: 0.0, dni: 0.0, dhi: 0.0 }; HOURS_PER_YEAR];
    WeatherSeries::new("constant", site, records).expect("valid constant series")
}

/// Constant dry bulb with clear-sky irradiance that depends only on the sun's
/// altitude, so morning and afternoon are mirror images about solar noon.
pub fn noon_symmetric(site: Site, dry_bulb: f64, clearness: f64) -> WeatherSeries {
    let records = (0..HOURS_PER_YEAR)
        .map(|h| {
            let pos = sun_for_record(&site, h);
            let ghi = clearness * clear_sky_ghi(&pos);
            let (dni, dhi) = split_global(ghi, &pos, h / 24 + 1);
            HourlyRecord { dry_bulb, ghi, dni, dhi }
        })
        .collect();
    WeatherSeries::new("noon-symmetric", site, records).expect("valid symmetric series")
}
