//! Sun position, facade irradiance and overhang attenuation.
//!
//! Angles are degrees throughout the public API. Azimuths are measured
//! clockwise from North; a facade azimuth is the direction its outward normal
//! faces.

use std::f64::consts::PI;

use serde::Serialize;

use crate::weather::{HourlyRecord, Site, WeatherSeries, HOURS_PER_YEAR};

/// Default ground reflectance.
pub const DEFAULT_ALBEDO: f64 = 0.2;
/// Narrowest window the shading geometry works with, m.
pub const MIN_SHADING_WIDTH: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolarPosition {
    /// Degrees above the horizon.
    pub altitude: f64,
    /// Degrees clockwise from North, in [0, 360).
    pub azimuth: f64,
    pub declination: f64,
    /// Degrees, negative before solar noon.
    pub hour_angle: f64,
}

/// Calendar year that a weather file's day numbers are mapped onto. A year
/// two after a leap year sits mid-way through the leap cycle, so no calendar
/// year is off by more than a quarter day.
pub const REFERENCE_YEAR: i32 = 2022;
/// Julian day of 1 January 00:00 UT of [`REFERENCE_YEAR`].
const JD_YEAR_START: f64 = 2_459_580.5;

/// Declination (degrees) and equation of time (minutes) from the
/// low-precision solar coordinates of the astronomical almanac.
/// `ut_day` counts days since 1 January 00:00 UT.
fn ephemeris(ut_day: f64) -> (f64, f64) {
    let t = (JD_YEAR_START + ut_day - 2_451_545.0) / 36_525.0;
    let mean_long = (280.466_46 + t * (36_000.769_83 + 0.000_303_2 * t)).rem_euclid(360.0).to_radians();
    let anomaly = (357.529_11 + t * (35_999.050_29 - 0.000_153_7 * t)).to_radians();
    let ecc = 0.016_708_634 - t * (0.000_042_037 + 0.000_000_126_7 * t);
    let centre = anomaly.sin() * (1.914_602 - t * (0.004_817 + 0.000_014 * t))
        + (2.0 * anomaly).sin() * (0.019_993 - 0.000_101 * t)
        + (3.0 * anomaly).sin() * 0.000_289;
    let node = (125.04 - 1_934.136 * t).to_radians();
    let apparent_long = (mean_long.to_degrees() + centre - 0.005_69 - 0.004_78 * node.sin()).to_radians();
    let obliquity_mean = 23.0 + (26.0 + (21.448 - t * (46.815 + t * (0.000_59 - t * 0.001_813))) / 60.0) / 60.0;
    let obliquity = (obliquity_mean + 0.002_56 * node.cos()).to_radians();

    let declination = (obliquity.sin() * apparent_long.sin()).asin().to_degrees();
    let y = (obliquity / 2.0).tan().powi(2);
    let eot = y * (2.0 * mean_long).sin() - 2.0 * ecc * anomaly.sin()
        + 4.0 * ecc * y * anomaly.sin() * (2.0 * mean_long).cos()
        - 0.5 * y * y * (4.0 * mean_long).sin()
        - 1.25 * ecc * ecc * (2.0 * anomaly).sin();
    (declination, 4.0 * eot.to_degrees())
}

/// Solar declination in degrees, `ut_day` days after 1 January 00:00 UT.
pub fn declination(ut_day: f64) -> f64 {
    ephemeris(ut_day).0
}

/// Equation of time in minutes, `ut_day` days after 1 January 00:00 UT.
pub fn equation_of_time(ut_day: f64) -> f64 {
    ephemeris(ut_day).1
}

/// Apparent solar time (hours) for a local standard clock time on a day of year (1..=365).
pub fn solar_hour(site: &Site, day_of_year: u32, clock_hour: f64) -> f64 {
    let standard_meridian = 15.0 * site.utc_offset;
    let ut_day = (day_of_year - 1) as f64 + (clock_hour - site.utc_offset) / 24.0;
    clock_hour + (4.0 * (site.longitude - standard_meridian) + equation_of_time(ut_day)) / 60.0
}

pub fn solar_position(site: &Site, day_of_year: u32, solar_hour: f64) -> SolarPosition {
    // Mean solar time is close enough to UT for the declination.
    let decl = declination((day_of_year - 1) as f64 + (solar_hour - site.longitude / 15.0) / 24.0);
    let hour_angle = 15.0 * (solar_hour - 12.0);

    let (sin_lat, cos_lat) = site.latitude.to_radians().sin_cos();
    let (sin_dec, cos_dec) = decl.to_radians().sin_cos();
    let (sin_ha, cos_ha) = hour_angle.to_radians().sin_cos();

    let sin_alt = (sin_lat * sin_dec + cos_lat * cos_dec * cos_ha).clamp(-1.0, 1.0);
    let altitude = sin_alt.asin().to_degrees();

    let east = -cos_dec * sin_ha;
    let north = sin_dec * cos_lat - cos_dec * cos_ha * sin_lat;
    let azimuth = if east.abs() < 1e-15 && north.abs() < 1e-15 {
        // sun at the zenith
        180.0
    } else {
        east.atan2(north).to_degrees().rem_euclid(360.0)
    };
    SolarPosition { altitude, azimuth: if azimuth >= 360.0 { 0.0 } else { azimuth }, declination: decl, hour_angle }
}

/// Sun position at the midpoint of the hourly record `hour_index` (0..8760).
pub fn sun_for_record(site: &Site, hour_index: usize) -> SolarPosition {
    let day_of_year = (hour_index / 24) as u32 + 1;
    let clock = (hour_index % 24) as f64 + 0.5;
    solar_position(site, day_of_year, solar_hour(site, day_of_year, clock))
}

/// Sun positions for every hour of a weather year.
#[derive(Debug, Clone)]
pub struct SunPath {
    positions: Vec<SolarPosition>,
}

impl SunPath {
    pub fn new(site: &Site) -> Self {
        Self { positions: (0..HOURS_PER_YEAR).map(|h| sun_for_record(site, h)).collect() }
    }

    pub fn for_weather(weather: &WeatherSeries) -> Self {
        Self::new(&weather.site)
    }

    pub fn positions(&self) -> &[SolarPosition] {
        &self.positions
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FacadeIrradiance {
    pub beam: f64,
    pub sky_diffuse: f64,
    pub ground_reflected: f64,
}

impl FacadeIrradiance {
    pub fn total(&self) -> f64 {
        self.beam + self.sky_diffuse + self.ground_reflected
    }
}

/// Cosine of the beam incidence angle on a vertical facade, unclamped.
pub fn vertical_incidence_cos(pos: &SolarPosition, facade_azimuth: f64) -> f64 {
    pos.altitude.to_radians().cos() * (pos.azimuth - facade_azimuth).to_radians().cos()
}

/// Irradiance on a vertical facade with an isotropic sky.
pub fn facade_irradiance(record: &HourlyRecord, pos: &SolarPosition, facade_azimuth: f64, albedo: f64) -> FacadeIrradiance {
    let beam = if pos.altitude > 0.0 {
        record.dni * vertical_incidence_cos(pos, facade_azimuth).max(0.0)
    } else {
        0.0
    };
    FacadeIrradiance { beam, sky_diffuse: 0.5 * record.dhi, ground_reflected: 0.5 * albedo * record.ghi }
}

/// Flush, full-width overhang above a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverhangGeometry {
    /// Projection from the wall, m.
    pub depth: f64,
    pub window_width: f64,
    pub window_height: f64,
}

impl OverhangGeometry {
    pub fn new(depth: f64, window_width: f64, window_height: f64) -> Self {
        Self { depth: depth.max(0.0), window_width, window_height }
    }

    fn shading_width(&self) -> f64 {
        self.window_width.max(MIN_SHADING_WIDTH)
    }
}

/// Sun direction relative to a facade, reduced to what the overhang shadow
/// needs: `tan(altitude)`, `|sin(γ)|` and `cos(γ)` with γ the relative azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeSun {
    pub tan_altitude: f64,
    pub sin_gamma: f64,
    pub cos_gamma: f64,
}

impl RelativeSun {
    pub fn new(pos: &SolarPosition, facade_azimuth: f64) -> Option<Self> {
        let (sin_g, cos_g) = (pos.azimuth - facade_azimuth).to_radians().sin_cos();
        if pos.altitude <= 0.0 || cos_g <= 0.0 || pos.altitude.to_radians().cos() * cos_g <= 0.0 {
            return None;
        }
        Some(Self { tan_altitude: pos.altitude.to_radians().tan(), sin_gamma: sin_g.abs(), cos_gamma: cos_g })
    }

    /// Sunlit fraction of a `width` × `height` window under an overhang of `depth`.
    ///
    /// A window point `v` metres below the head is shaded when its ray to the
    /// sun meets the overhang plane within the projection (`v ≤ s`, with
    /// `s = d·tan(alt)/cos(γ)`) and within the overhang's width. That lateral
    /// offset grows linearly with `v` at the rate `r = |sin γ| / tan(alt)`, so
    /// the shadow is a parallelogram: shaded area is `∫₀^min(s,h) max(0, w − r·v) dv`.
    pub fn sunlit_fraction(&self, depth: f64, width: f64, height: f64) -> f64 {
        if depth <= 0.0 {
            return 1.0;
        }
        let drop = depth * self.tan_altitude / self.cos_gamma;
        let covered = drop.min(height);
        let rate = self.sin_gamma / self.tan_altitude;
        let area = if rate * covered <= width {
            width * covered - 0.5 * rate * covered * covered
        } else {
            0.5 * width * width / rate
        };
        (1.0 - area / (width * height)).clamp(0.0, 1.0)
    }
}

/// Fraction of the window receiving beam radiation under the overhang.
/// Returns 1 when the sun is below the horizon or behind the facade.
pub fn overhang_beam_fraction(geom: &OverhangGeometry, pos: &SolarPosition, facade_azimuth: f64) -> f64 {
    match RelativeSun::new(pos, facade_azimuth) {
        Some(rel) => rel.sunlit_fraction(geom.depth, geom.shading_width(), geom.window_height),
        None => 1.0,
    }
}

/// Isotropic-sky diffuse reaching the window mid point relative to an
/// unobstructed vertical wall.
///
/// The overhang is a `w × d` horizontal rectangle `h/2` above the evaluation
/// point, centred laterally. Its view factor from the point follows the
/// contour-integral form for a differential element and a polygon; the
/// unobstructed sky view factor of a vertical element is 1/2.
pub fn overhang_sky_view_factor(geom: &OverhangGeometry) -> f64 {
    if geom.depth <= 0.0 {
        return 1.0;
    }
    let half_w = 0.5 * geom.shading_width();
    let z = 0.5 * geom.window_height;
    let d = geom.depth;
    // x lateral, y outward normal, z up
    let corners = [[-half_w, 0.0, z], [half_w, 0.0, z], [half_w, d, z], [-half_w, d, z]];
    let normal = [0.0, 1.0, 0.0];
    let mut sum = 0.0;
    for i in 0..4 {
        let a = corners[i];
        let b = corners[(i + 1) % 4];
        let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        if cross_norm == 0.0 {
            continue;
        }
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let angle = cross_norm.atan2(dot);
        let n_dot_g = (normal[0] * cross[0] + normal[1] * cross[1] + normal[2] * cross[2]) / cross_norm;
        sum += angle * n_dot_g;
    }
    let overhang_factor = (sum / (2.0 * PI)).abs();
    (1.0 - 2.0 * overhang_factor).clamp(0.0, 1.0)
}

/// Hourly facade irradiance and relative sun geometry for one facade azimuth.
#[derive(Debug, Clone)]
pub struct FacadeSeries {
    pub azimuth: f64,
    hours: Vec<FacadeHour>,
}

#[derive(Debug, Clone, Copy)]
pub struct FacadeHour {
    pub irradiance: FacadeIrradiance,
    /// `None` while the sun is down or behind the facade.
    pub sun: Option<RelativeSun>,
}

impl FacadeSeries {
    pub fn new(weather: &WeatherSeries, sun: &SunPath, azimuth: f64, albedo: f64) -> Self {
        let hours = weather
            .records()
            .iter()
            .zip(sun.positions())
            .map(|(record, pos)| FacadeHour {
                irradiance: facade_irradiance(record, pos, azimuth, albedo),
                sun: RelativeSun::new(pos, azimuth),
            })
            .collect();
        Self { azimuth, hours }
    }

    pub fn hours(&self) -> &[FacadeHour] {
        &self.hours
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pos(altitude: f64, azimuth: f64) -> SolarPosition {
        SolarPosition { altitude, azimuth, declination: 0.0, hour_angle: 0.0 }
    }

    #[test]
    fn equator_equinox_noon_is_overhead() {
        let site = Site::new(0.0, 0.0, 0.0, 0.0).unwrap();
        // find the day whose declination is closest to zero in March
        let day = (60..100).min_by(|&a, &b| declination(a as f64 - 0.5).abs().total_cmp(&declination(b as f64 - 0.5).abs())).unwrap();
        let p = solar_position(&site, day, 12.0);
        assert!(p.declination.abs() < 0.25);
        assert!(p.altitude > 89.7, "{p:?}");
    }

    #[test]
    fn coimbra_summer_solstice_noon_altitude() {
        let site = Site::new(40.2, -8.42, 0.0, 141.0).unwrap();
        let p = solar_position(&site, 172, 12.0);
        assert_abs_diff_eq!(p.altitude, 90.0 - 40.2 + 23.45, epsilon = 0.3);
        assert_abs_diff_eq!(p.azimuth, 180.0, epsilon = 0.5);
    }

    #[test]
    fn morning_sun_is_east() {
        let site = Site::new(40.2, -8.42, 0.0, 141.0).unwrap();
        let p = solar_position(&site, 80, 8.0);
        assert!(p.azimuth > 90.0 && p.azimuth < 180.0, "{p:?}");
        assert!(p.hour_angle < 0.0);
    }

    #[test]
    fn night_beam_is_zero() {
        let r = HourlyRecord { dry_bulb: 10.0, ghi: 0.0, dni: 0.0, dhi: 0.0 };
        let f = facade_irradiance(&r, &pos(-10.0, 0.0), 180.0, 0.2);
        assert_eq!(f, FacadeIrradiance::default());
        let r = HourlyRecord { dhi: 40.0, ghi: 40.0, ..r };
        let f = facade_irradiance(&r, &pos(-1.0, 90.0), 90.0, 0.2);
        assert_eq!(f.beam, 0.0);
        assert_eq!(f.sky_diffuse, 20.0);
    }

    #[test]
    fn beam_cut_off_behind_facade() {
        let r = HourlyRecord { dry_bulb: 10.0, ghi: 0.0, dni: 800.0, dhi: 0.0 };
        assert_eq!(facade_irradiance(&r, &pos(0.0, 0.0), 180.0, 0.2).beam, 0.0);
        assert_eq!(facade_irradiance(&r, &pos(20.0, 0.0), 180.0, 0.2).beam, 0.0);
    }

    #[test]
    fn beam_dead_ahead() {
        let r = HourlyRecord { dry_bulb: 10.0, ghi: 0.0, dni: 800.0, dhi: 0.0 };
        let f = facade_irradiance(&r, &pos(30.0, 180.0), 180.0, 0.2);
        assert_abs_diff_eq!(f.beam, 692.820_323, epsilon = 1e-6);
    }

    #[test]
    fn no_overhang_no_shade() {
        let g = OverhangGeometry::new(0.0, 4.0, 2.0);
        for alt in [5.0, 30.0, 60.0, 85.0] {
            for az in [100.0, 150.0, 180.0, 230.0] {
                assert_eq!(overhang_beam_fraction(&g, &pos(alt, az), 180.0), 1.0);
            }
        }
    }

    #[test]
    fn head_on_half_shade() {
        let g = OverhangGeometry::new(1.0, 4.0, 2.0);
        assert_abs_diff_eq!(overhang_beam_fraction(&g, &pos(45.0, 180.0), 180.0), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn oblique_shadow_is_a_parallelogram() {
        // alt 45°, γ 60°, d 1, w 1, h 2: r = sin60/tan45 = 0.866, s = 2,
        // shaded = w²/(2r) = 0.57735, fraction = 1 - 0.57735/2
        let g = OverhangGeometry::new(1.0, 1.0, 2.0);
        let f = overhang_beam_fraction(&g, &pos(45.0, 240.0), 180.0);
        assert_abs_diff_eq!(f, 1.0 - 0.5 / 60f64.to_radians().sin() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn sun_behind_returns_one() {
        let g = OverhangGeometry::new(2.0, 1.0, 2.0);
        assert_eq!(overhang_beam_fraction(&g, &pos(30.0, 0.0), 180.0), 1.0);
        assert_eq!(overhang_beam_fraction(&g, &pos(-5.0, 180.0), 180.0), 1.0);
    }

    #[test]
    fn sky_view_limits() {
        let g = |d: f64| OverhangGeometry::new(d, 4.0, 2.0);
        assert_eq!(overhang_sky_view_factor(&g(0.0)), 1.0);
        let far = overhang_sky_view_factor(&g(2000.0));
        let farther = overhang_sky_view_factor(&g(20000.0));
        assert!(farther <= far && far > 0.0 && far < 0.5, "{far} {farther}");
        assert!((far - farther).abs() < 1e-3);
    }

    #[test]
    fn sky_view_of_wide_overhang_approaches_strip_value() {
        // infinitely wide overhang: normalized factor is sin(β), β the edge elevation
        let g = OverhangGeometry::new(1.0, 1.0e5, 2.0);
        let expected = 1.0 / (1.0f64 + 1.0).sqrt();
        assert_abs_diff_eq!(overhang_sky_view_factor(&g), expected, epsilon = 1e-4);
    }
}
