//! Free-floating hourly model of the reference room.
//!
//! The room is the 5-conductance, 1-capacitance network of the EN ISO 13790
//! simple hourly method: an air node, a central surface node and a thermal
//! mass node, with ventilation, glazing and opaque envelope conductances to
//! the outdoors. Opaque conductance to the ground (floor) shares the mass
//! branch through a conductance-weighted boundary temperature. The only heat
//! input is solar gain through the window; there is no heating, cooling,
//! occupancy or internal gain.

use serde::Serialize;
use thiserror::Error;

use crate::solar::{FacadeSeries, FacadeIrradiance, OverhangGeometry, SunPath, MIN_SHADING_WIDTH};
use crate::weather::{month_hours, WeatherSeries, HOURS_PER_YEAR};

/// Volumetric heat capacity of air, J/(m³·K).
pub const AIR_HEAT_CAPACITY: f64 = 1200.0;
/// Heat transfer coefficient between air and surface node per m² of internal area, W/(m²·K).
const H_IS_PER_AREA: f64 = 3.45;
/// Heat transfer coefficient between surface and mass node per m² of effective mass area, W/(m²·K).
const H_MS_PER_AREA: f64 = 9.1;
/// Internal surface area over floor area.
const TOTAL_AREA_RATIO: f64 = 4.5;
const STEP_SECONDS: f64 = 3600.0;

#[derive(Debug, Error, PartialEq)]
pub enum ZoneError {
    #[error("invalid room: {0}")]
    Geometry(String),
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("gain series has {found} values, expected {expected}")]
    Length { found: usize, expected: usize },
    #[error("simulation diverged at hour {hour}: operative temperature {value}")]
    Diverged { hour: usize, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CapacityClass {
    Light,
    Medium,
    Heavy,
}

impl CapacityClass {
    /// Effective internal heat capacity per m² of floor, J/(m²·K).
    pub fn areal_capacitance(self) -> f64 {
        match self {
            Self::Light => 110_000.0,
            Self::Medium => 165_000.0,
            Self::Heavy => 260_000.0,
        }
    }

    /// Effective mass area per m² of floor.
    pub fn mass_area_ratio(self) -> f64 {
        match self {
            Self::Light | Self::Medium => 2.5,
            Self::Heavy => 3.0,
        }
    }
}

impl std::str::FromStr for CapacityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "light" => Ok(Self::Light),
            "medium" => Ok(Self::Medium),
            "heavy" => Ok(Self::Heavy),
            other => Err(format!("unknown capacity class {other:?}")),
        }
    }
}

/// Envelope thermal properties. The default is the double-brick reference
/// construction with double glazing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionSet {
    pub u_wall: f64,
    pub u_floor: f64,
    pub u_roof: f64,
    pub u_window: f64,
    pub shgc: f64,
    /// Visible transmittance; carried for completeness, not used thermally.
    pub vt: f64,
    pub capacity: CapacityClass,
}

impl Default for ConstructionSet {
    fn default() -> Self {
        Self { u_wall: 0.43, u_floor: 0.45, u_roof: 0.37, u_window: 2.60, shgc: 0.63, vt: 0.56, capacity: CapacityClass::Medium }
    }
}

impl ConstructionSet {
    pub fn validate(&self) -> Result<(), ZoneError> {
        for (name, u) in [("u_wall", self.u_wall), ("u_floor", self.u_floor), ("u_roof", self.u_roof), ("u_window", self.u_window)] {
            if !(u > 0.0 && u.is_finite()) {
                return Err(ZoneError::Construction(format!("{name} must be positive, got {u}")));
            }
        }
        if !(self.shgc > 0.0 && self.shgc <= 1.0) {
            return Err(ZoneError::Construction(format!("shgc must lie in (0, 1], got {}", self.shgc)));
        }
        if !(self.vt > 0.0 && self.vt <= 1.0) {
            return Err(ZoneError::Construction(format!("vt must lie in (0, 1], got {}", self.vt)));
        }
        Ok(())
    }
}

/// Which walls besides the window facade lose heat to the outdoors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallExposure {
    /// All four walls are exterior.
    AllExterior,
    /// Only the window facade is exterior; the other walls are adiabatic.
    FacadeOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FloorBoundary {
    /// Coupled to a constant ground temperature equal to the annual mean dry bulb.
    Ground,
    Exterior,
    Adiabatic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoomScenario {
    /// Length of the window facade, m.
    pub floor_length: f64,
    pub floor_depth: f64,
    pub ceiling_height: f64,
    pub sill_height: f64,
    /// Outward normal of the window facade, degrees clockwise from North.
    pub facade_azimuth: f64,
    pub window_width: f64,
    pub window_height: f64,
    pub overhang_depth: f64,
    pub infiltration_ach: f64,
    pub constructions: ConstructionSet,
    pub wall_exposure: WallExposure,
    pub floor_boundary: FloorBoundary,
}

impl Default for RoomScenario {
    /// 7.60 m × 3.00 m × 2.70 m room, window centred in the 7.60 m facade
    /// with a 0.50 m sill, 0.4 ACH infiltration.
    fn default() -> Self {
        Self {
            floor_length: 7.60,
            floor_depth: 3.00,
            ceiling_height: 2.70,
            sill_height: 0.50,
            facade_azimuth: 180.0,
            window_width: 0.01,
            window_height: 2.00,
            overhang_depth: 0.0,
            infiltration_ach: 0.4,
            constructions: ConstructionSet::default(),
            wall_exposure: WallExposure::AllExterior,
            floor_boundary: FloorBoundary::Ground,
        }
    }
}

impl RoomScenario {
    pub fn floor_area(&self) -> f64 {
        self.floor_length * self.floor_depth
    }

    pub fn volume(&self) -> f64 {
        self.floor_area() * self.ceiling_height
    }

    pub fn facade_area(&self) -> f64 {
        self.floor_length * self.ceiling_height
    }

    pub fn window_area(&self) -> f64 {
        self.window_width * self.window_height
    }

    /// Window-to-floor ratio.
    pub fn wfr(&self) -> f64 {
        self.window_area() / self.floor_area()
    }

    /// Window-to-wall ratio of the facade.
    pub fn wwr(&self) -> f64 {
        self.window_area() / self.facade_area()
    }

    pub fn overhang(&self) -> OverhangGeometry {
        OverhangGeometry::new(self.overhang_depth, self.window_width, self.window_height)
    }

    pub fn validate(&self) -> Result<(), ZoneError> {
        let positive = [
            ("floor_length", self.floor_length),
            ("floor_depth", self.floor_depth),
            ("ceiling_height", self.ceiling_height),
            ("window_height", self.window_height),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ZoneError::Geometry(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("window_width", self.window_width),
            ("overhang_depth", self.overhang_depth),
            ("sill_height", self.sill_height),
            ("infiltration_ach", self.infiltration_ach),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(ZoneError::Geometry(format!("{name} must be non-negative, got {v}")));
            }
        }
        if self.window_width > self.floor_length + 1e-12 {
            return Err(ZoneError::Geometry(format!(
                "window width {} exceeds facade width {}",
                self.window_width, self.floor_length
            )));
        }
        if self.sill_height + self.window_height > self.ceiling_height + 1e-12 {
            return Err(ZoneError::Geometry(format!(
                "window head at {} m is above the {} m ceiling",
                self.sill_height + self.window_height,
                self.ceiling_height
            )));
        }
        if !self.facade_azimuth.is_finite() {
            return Err(ZoneError::Geometry("facade azimuth is not finite".into()));
        }
        self.constructions.validate()
    }
}

/// Coefficients of the room's RC network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZoneModel {
    /// Glazing, W/K.
    pub h_window: f64,
    /// Opaque envelope to the outdoor air, W/K.
    pub h_opaque_exterior: f64,
    /// Floor to ground, W/K.
    pub h_ground: f64,
    /// Infiltration, W/K.
    pub h_ventilation: f64,
    /// Air node to surface node, W/K.
    pub h_air_surface: f64,
    /// Surface node to mass node, W/K.
    pub h_surface_mass: f64,
    /// Mass node to the opaque boundary, W/K.
    pub h_mass_boundary: f64,
    /// J/K
    pub capacitance: f64,
    /// Window area × SHGC, m².
    pub solar_aperture: f64,
    /// Share of solar gain injected at the mass node.
    pub mass_gain_share: f64,
    /// Share of solar gain injected at the surface node.
    pub surface_gain_share: f64,
    substeps: u32,
}

pub fn build_zone(scenario: &RoomScenario) -> Result<ZoneModel, ZoneError> {
    scenario.validate()?;
    let c = &scenario.constructions;
    let floor_area = scenario.floor_area();
    let wall_area_side = scenario.floor_depth * scenario.ceiling_height;
    let facade_opaque = scenario.facade_area() - scenario.window_area();
    let other_walls = match scenario.wall_exposure {
        WallExposure::AllExterior => scenario.facade_area() + 2.0 * wall_area_side,
        WallExposure::FacadeOnly => 0.0,
    };
    let mut h_opaque_exterior = c.u_wall * (facade_opaque + other_walls) + c.u_roof * floor_area;
    let mut h_ground = 0.0;
    match scenario.floor_boundary {
        FloorBoundary::Ground => h_ground = c.u_floor * floor_area,
        FloorBoundary::Exterior => h_opaque_exterior += c.u_floor * floor_area,
        FloorBoundary::Adiabatic => {}
    }

    let total_area = TOTAL_AREA_RATIO * floor_area;
    let mass_area = c.capacity.mass_area_ratio() * floor_area;
    let h_surface_mass = H_MS_PER_AREA * mass_area;
    let h_opaque = h_opaque_exterior + h_ground;
    if h_opaque >= h_surface_mass {
        return Err(ZoneError::Construction(format!(
            "opaque conductance {h_opaque:.1} W/K must stay below the surface-mass coupling {h_surface_mass:.1} W/K"
        )));
    }
    let h_mass_boundary = if h_opaque > 0.0 { 1.0 / (1.0 / h_opaque - 1.0 / h_surface_mass) } else { 0.0 };
    let h_window = c.u_window * scenario.window_area();
    let mass_gain_share = mass_area / total_area;
    let surface_gain_share = 1.0 - mass_gain_share - h_window / (H_MS_PER_AREA * total_area);
    if surface_gain_share < 0.0 {
        return Err(ZoneError::Construction("glazing conductance too large for the floor area".into()));
    }

    let mut zone = ZoneModel {
        h_window,
        h_opaque_exterior,
        h_ground,
        h_ventilation: scenario.infiltration_ach * scenario.volume() * AIR_HEAT_CAPACITY / 3600.0,
        h_air_surface: H_IS_PER_AREA * total_area,
        h_surface_mass,
        h_mass_boundary,
        capacitance: c.capacity.areal_capacitance() * floor_area,
        solar_aperture: scenario.window_area() * c.shgc,
        mass_gain_share,
        surface_gain_share,
        substeps: 1,
    };
    zone.substeps = zone.required_substeps();
    Ok(zone)
}

/// Node temperatures after one step, °C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeTemperatures {
    pub air: f64,
    pub surface: f64,
    /// Mass temperature averaged over the step.
    pub mass_mean: f64,
    /// Mass temperature at the end of the step.
    pub mass: f64,
}

impl NodeTemperatures {
    pub fn operative(&self) -> f64 {
        0.3 * self.air + 0.7 * self.surface
    }
}

/// Precomputed step coefficients.
#[derive(Debug, Clone, Copy)]
struct Stepper {
    h2: f64,
    h3: f64,
    keep: f64,
    inv_total: f64,
}

impl ZoneModel {
    pub fn h_opaque(&self) -> f64 {
        self.h_opaque_exterior + self.h_ground
    }

    /// Total conductance to the boundary, W/K.
    pub fn h_total(&self) -> f64 {
        self.h_window + self.h_opaque() + self.h_ventilation
    }

    /// Substeps per hour so the explicit half of the update stays non-negative.
    pub fn substeps(&self) -> u32 {
        self.substeps
    }

    fn required_substeps(&self) -> u32 {
        let st = self.stepper(1);
        let half = 0.5 * (st.h3 + self.h_mass_boundary);
        let n = (half * STEP_SECONDS / self.capacitance).ceil();
        n.max(1.0) as u32
    }

    fn stepper(&self, substeps: u32) -> Stepper {
        let h1 = series(self.h_ventilation, self.h_air_surface);
        let h2 = h1 + self.h_window;
        let h3 = series(h2, self.h_surface_mass);
        let c = self.capacitance * substeps as f64 / STEP_SECONDS;
        let half = 0.5 * (h3 + self.h_mass_boundary);
        Stepper { h2, h3, keep: c - half, inv_total: 1.0 / (c + half) }
    }

    /// Boundary temperature of the mass branch for an outdoor temperature.
    pub fn mass_boundary_temperature(&self, outdoor: f64, ground: f64) -> f64 {
        let h = self.h_opaque();
        if h > 0.0 {
            (self.h_opaque_exterior * outdoor + self.h_ground * ground) / h
        } else {
            outdoor
        }
    }

    /// Solar gain through the window, W.
    pub fn solar_gain(&self, irradiance: &FacadeIrradiance, beam_fraction: f64, sky_view_factor: f64) -> f64 {
        self.solar_aperture
            * (irradiance.beam * beam_fraction + irradiance.sky_diffuse * sky_view_factor + irradiance.ground_reflected)
    }

    /// Advances the network by one hour from mass temperature `mass` with
    /// constant outdoor temperature and solar gain over the hour.
    pub fn step(&self, mass: f64, outdoor: f64, ground: f64, gain: f64) -> NodeTemperatures {
        self.advance(&self.stepper(self.substeps), mass, outdoor, ground, gain)
    }

    #[inline]
    fn substep(&self, st: &Stepper, mass: f64, outdoor: f64, boundary: f64, gain: f64) -> NodeTemperatures {
        let gain_mass = self.mass_gain_share * gain;
        let gain_surface = self.surface_gain_share * gain;
        let surface_drive = gain_surface + st.h2 * outdoor;
        // h3/h2 tends to 1 as the surface node loses every other path.
        let coupled = if st.h2 > 0.0 { st.h3 * surface_drive / st.h2 } else { surface_drive };
        let forcing = gain_mass + self.h_mass_boundary * boundary + coupled;
        let mass_end = (mass * st.keep + forcing) * st.inv_total;
        let mass_mean = 0.5 * (mass + mass_end);
        let surface = (self.h_surface_mass * mass_mean + surface_drive) / (self.h_surface_mass + st.h2);
        let air = (self.h_air_surface * surface + self.h_ventilation * outdoor) / (self.h_air_surface + self.h_ventilation);
        NodeTemperatures { air, surface, mass_mean, mass: mass_end }
    }

    /// Runs consecutive hours and returns the node temperatures of each.
    pub fn simulate_nodes(&self, initial_mass: f64, outdoor: &[f64], ground: f64, gains: &[f64]) -> Result<Vec<NodeTemperatures>, ZoneError> {
        if gains.len() != outdoor.len() {
            return Err(ZoneError::Length { found: gains.len(), expected: outdoor.len() });
        }
        let mut mass = initial_mass;
        Ok(outdoor
            .iter()
            .zip(gains)
            .map(|(&t, &g)| {
                let n = self.step(mass, t, ground, g);
                mass = n.mass;
                n
            })
            .collect())
    }

    /// Operative temperature for each hour of the year after a December spin-up.
    ///
    /// `outdoor` and `gains` hold 8760 hourly values. December is simulated
    /// once and discarded before the scored year starts on 1 January.
    pub fn run_year(&self, outdoor: &[f64], ground: f64, gains: &[f64]) -> Result<OperativeSeries, ZoneError> {
        let mut out = Vec::with_capacity(HOURS_PER_YEAR);
        self.run_year_into(outdoor, ground, gains, &mut out)?;
        Ok(OperativeSeries { values: out })
    }

    pub(crate) fn run_year_into(&self, outdoor: &[f64], ground: f64, gains: &[f64], out: &mut Vec<f64>) -> Result<(), ZoneError> {
        for len in [outdoor.len(), gains.len()] {
            if len != HOURS_PER_YEAR {
                return Err(ZoneError::Length { found: len, expected: HOURS_PER_YEAR });
            }
        }
        let st = self.stepper(self.substeps);
        let december = month_hours(11);
        let mut mass = outdoor[december.clone()].iter().sum::<f64>() / december.len() as f64;
        for h in december {
            mass = self.advance(&st, mass, outdoor[h], ground, gains[h]).mass;
        }
        out.clear();
        let (lo, hi) = outdoor.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), &t| (l.min(t), u.max(t)));
        let (lo, hi) = (lo - 15.0, hi + 40.0);
        for h in 0..HOURS_PER_YEAR {
            let n = self.advance(&st, mass, outdoor[h], ground, gains[h]);
            mass = n.mass;
            let op = n.operative();
            if !(op >= lo && op <= hi) {
                return Err(ZoneError::Diverged { hour: h, value: op });
            }
            out.push(op);
        }
        Ok(())
    }

    #[inline]
    fn advance(&self, st: &Stepper, mass: f64, outdoor: f64, ground: f64, gain: f64) -> NodeTemperatures {
        let boundary = self.mass_boundary_temperature(outdoor, ground);
        let mut state = self.substep(st, mass, outdoor, boundary, gain);
        for _ in 1..self.substeps {
            state = self.substep(st, state.mass, outdoor, boundary, gain);
        }
        state
    }
}

fn series(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        0.0
    } else {
        1.0 / (1.0 / a + 1.0 / b)
    }
}

/// Hourly operative temperatures, °C.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperativeSeries {
    pub values: Vec<f64>,
}

/// Solar gain through the window, W, for one hour's facade irradiance.
pub fn solar_gain(scenario: &RoomScenario, irradiance: &FacadeIrradiance, beam_fraction: f64, sky_view_factor: f64) -> f64 {
    scenario.window_area()
        * scenario.constructions.shgc
        * (irradiance.beam * beam_fraction + irradiance.sky_diffuse * sky_view_factor + irradiance.ground_reflected)
}

/// Hourly window gains, W, for a scenario on a precomputed facade series.
pub fn hourly_gains(zone: &ZoneModel, scenario: &RoomScenario, facade: &FacadeSeries) -> Vec<f64> {
    let mut out = Vec::with_capacity(HOURS_PER_YEAR);
    hourly_gains_into(zone, scenario, facade, &mut out);
    out
}

pub(crate) fn hourly_gains_into(zone: &ZoneModel, scenario: &RoomScenario, facade: &FacadeSeries, out: &mut Vec<f64>) {
    out.clear();
    let geom = scenario.overhang();
    let svf = crate::solar::overhang_sky_view_factor(&geom);
    let width = scenario.window_width.max(MIN_SHADING_WIDTH);
    out.extend(facade.hours().iter().map(|h| {
        let fraction = match (&h.sun, h.irradiance.beam > 0.0) {
            (Some(sun), true) => sun.sunlit_fraction(geom.depth, width, geom.window_height),
            _ => 1.0,
        };
        zone.solar_gain(&h.irradiance, fraction, svf)
    }));
}

/// Ground temperature used for a ground-coupled floor.
pub fn ground_temperature(weather: &WeatherSeries) -> f64 {
    weather.annual_mean_dry_bulb()
}

/// Full annual run of one scenario.
pub fn simulate_year(scenario: &RoomScenario, weather: &WeatherSeries, albedo: f64) -> Result<OperativeSeries, ZoneError> {
    let zone = build_zone(scenario)?;
    let sun = SunPath::for_weather(weather);
    let facade = FacadeSeries::new(weather, &sun, scenario.facade_azimuth, albedo);
    let gains = hourly_gains(&zone, scenario, &facade);
    let outdoor: Vec<f64> = weather.dry_bulb().collect();
    zone.run_year(&outdoor, ground_temperature(weather), &gains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solar::DEFAULT_ALBEDO;
    use crate::weather::{synthetic, Site};
    use approx::assert_abs_diff_eq;

    fn room(width: f64) -> RoomScenario {
        RoomScenario { window_width: width, ..RoomScenario::default() }
    }

    #[test]
    fn minimal_window_conductance() {
        let z = build_zone(&room(0.01)).unwrap();
        assert_abs_diff_eq!(z.h_window, 0.052, epsilon = 1e-12);
    }

    #[test]
    fn widest_window_wfr() {
        let r = room(7.0);
        assert_abs_diff_eq!(r.window_area(), 14.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.floor_area(), 22.8, epsilon = 1e-12);
        assert_abs_diff_eq!(r.wfr(), 0.614, epsilon = 5e-4);
        assert!(build_zone(&r).is_ok());
    }

    #[test]
    fn ventilation_conductance() {
        let z = build_zone(&room(1.0)).unwrap();
        assert_abs_diff_eq!(room(1.0).volume(), 61.56, epsilon = 1e-9);
        assert_abs_diff_eq!(z.h_ventilation, 0.4 * 61.56 * 1200.0 / 3600.0, epsilon = 1e-9);
        assert_abs_diff_eq!(z.h_ventilation, 8.208, epsilon = 1e-9);
    }

    #[test]
    fn opaque_conductance_by_exposure() {
        let r = room(2.0);
        let z = build_zone(&r).unwrap();
        let walls = 7.6 * 2.7 * 2.0 + 3.0 * 2.7 * 2.0 - 4.0;
        assert_abs_diff_eq!(z.h_opaque_exterior, 0.43 * walls + 0.37 * 22.8, epsilon = 1e-9);
        assert_abs_diff_eq!(z.h_ground, 0.45 * 22.8, epsilon = 1e-9);

        let facade_only = RoomScenario { wall_exposure: WallExposure::FacadeOnly, floor_boundary: FloorBoundary::Adiabatic, ..r };
        let z = build_zone(&facade_only).unwrap();
        assert_abs_diff_eq!(z.h_opaque_exterior, 0.43 * (20.52 - 4.0) + 0.37 * 22.8, epsilon = 1e-9);
        assert_eq!(z.h_ground, 0.0);
    }

    #[test]
    fn window_wider_than_wall_is_rejected() {
        assert!(matches!(build_zone(&room(7.7)), Err(ZoneError::Geometry(_))));
        let tall = RoomScenario { window_height: 2.5, ..room(1.0) };
        assert!(matches!(build_zone(&tall), Err(ZoneError::Geometry(_))));
    }

    #[test]
    fn bad_constructions_are_rejected() {
        let mut r = room(1.0);
        r.constructions.u_wall = 0.0;
        assert!(matches!(build_zone(&r), Err(ZoneError::Construction(_))));
        let mut r = room(1.0);
        r.constructions.shgc = 1.5;
        assert!(build_zone(&r).is_err());
    }

    #[test]
    fn gain_arithmetic() {
        let r = RoomScenario { window_width: 2.0, ..RoomScenario::default() };
        let irr = FacadeIrradiance { beam: 500.0, sky_diffuse: 0.0, ground_reflected: 0.0 };
        assert_abs_diff_eq!(solar_gain(&r, &irr, 0.5, 1.0), 630.0, epsilon = 1e-9);
        assert_eq!(solar_gain(&r, &FacadeIrradiance::default(), 0.3, 0.2), 0.0);
        let z = build_zone(&r).unwrap();
        assert_abs_diff_eq!(z.solar_gain(&irr, 0.5, 1.0), 630.0, epsilon = 1e-9);
    }

    #[test]
    fn zero_depth_gain_is_unshaded() {
        let weather = synthetic::SyntheticClimate::coimbra().generate(1);
        let sun = SunPath::for_weather(&weather);
        let facade = FacadeSeries::new(&weather, &sun, 135.0, DEFAULT_ALBEDO);
        let r = RoomScenario { window_width: 3.0, facade_azimuth: 135.0, ..RoomScenario::default() };
        let z = build_zone(&r).unwrap();
        let gains = hourly_gains(&z, &r, &facade);
        for (g, h) in gains.iter().zip(facade.hours()) {
            assert_eq!(*g, z.solar_gain(&h.irradiance, 1.0, 1.0));
        }
    }

    #[test]
    fn isothermal_equilibrium() {
        let site = Site::new(40.2, -8.42, 0.0, 141.0).unwrap();
        let w = synthetic::constant(site, 20.0);
        for width in [0.01, 2.0, 7.0] {
            let op = simulate_year(&room(width), &w, DEFAULT_ALBEDO).unwrap();
            assert!(op.values.iter().all(|t| (t - 20.0).abs() < 0.01));
        }
    }

    #[test]
    fn default_room_needs_one_substep() {
        assert_eq!(build_zone(&room(7.0)).unwrap().substeps(), 1);
    }

    #[test]
    fn light_thin_room_substeps_stay_monotone() {
        let mut r = room(7.0);
        r.constructions.capacity = CapacityClass::Light;
        r.infiltration_ach = 30.0;
        let z = build_zone(&r).unwrap();
        let st = z.stepper(z.substeps());
        assert!(st.keep >= 0.0);
    }

    #[test]
    fn run_year_checks_lengths() {
        let z = build_zone(&room(1.0)).unwrap();
        let err = z.run_year(&[0.0; 10], 0.0, &[0.0; 10]).unwrap_err();
        assert_eq!(err, ZoneError::Length { found: 10, expected: HOURS_PER_YEAR });
    }
}
