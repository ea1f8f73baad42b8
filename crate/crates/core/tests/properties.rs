//! Invariants checked over random inputs.

use proptest::prelude::*;

use winshade::comfort::{comfort_limits, degree_hours, monthly_degree_hours, ComfortBand, ComfortCategory};
use winshade::solar::{
    facade_irradiance, overhang_beam_fraction, overhang_sky_view_factor, OverhangGeometry, SolarPosition, DEFAULT_ALBEDO,
};
use winshade::weather::{running_mean, running_mean_of_daily, HourlyRecord, RunningMeanSeries, Site, WeatherSeries};
use winshade::zone::{build_zone, CapacityClass, RoomScenario};

fn sun(altitude: f64, azimuth: f64) -> SolarPosition {
    SolarPosition { altitude, azimuth, declination: 0.0, hour_angle: 0.0 }
}

fn site() -> Site {
    Site::new(40.2, -8.42, 0.0, 141.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn running_mean_stays_within_daily_extremes(daily in prop::collection::vec(-15.0f64..40.0, 365), alpha in 0.05f64..0.95) {
        let rm = running_mean_of_daily(&daily, alpha).unwrap();
        let lo = daily.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = daily.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(rm.values.iter().all(|&v| v >= lo - 1e-9 && v <= hi + 1e-9));
    }

    #[test]
    fn running_mean_ignores_irradiance(temps in prop::collection::vec(-5.0f64..35.0, 24), ghi in 0.0f64..1000.0) {
        let make = |g: f64| {
            let records = (0..8760).map(|h| HourlyRecord { dry_bulb: temps[h % 24] + (h / 24) as f64 * 0.01, ghi: g, dni: g / 2.0, dhi: g / 2.0 }).collect();
            WeatherSeries::new("p", site(), records).unwrap()
        };
        prop_assert_eq!(running_mean(&make(0.0), 0.8).unwrap(), running_mean(&make(ghi), 0.8).unwrap());
    }

    #[test]
    fn beam_fraction_shrinks_with_depth(alt in 1.0f64..89.0, gamma in -89.0f64..89.0, d in 0.0f64..3.0, extra in 0.0f64..1.0, w in 0.01f64..7.0, h in 0.3f64..2.5) {
        let p = sun(alt, 180.0 + gamma);
        let shallow = overhang_beam_fraction(&OverhangGeometry::new(d, w, h), &p, 180.0);
        let deep = overhang_beam_fraction(&OverhangGeometry::new(d + extra, w, h), &p, 180.0);
        prop_assert!((0.0..=1.0).contains(&shallow));
        prop_assert!(deep <= shallow + 1e-12);
    }

    #[test]
    fn beam_fraction_is_mirror_symmetric(alt in 1.0f64..89.0, gamma in 0.0f64..89.0, d in 0.0f64..3.0, w in 0.01f64..7.0, h in 0.3f64..2.5) {
        let g = OverhangGeometry::new(d, w, h);
        let left = overhang_beam_fraction(&g, &sun(alt, 180.0 - gamma), 180.0);
        let right = overhang_beam_fraction(&g, &sun(alt, 180.0 + gamma), 180.0);
        prop_assert!((left - right).abs() < 1e-12);
    }

    #[test]
    fn sky_view_shrinks_with_depth(d in 0.0f64..3.0, extra in 0.0f64..1.0, w in 0.01f64..7.0, h in 0.3f64..2.5) {
        let a = overhang_sky_view_factor(&OverhangGeometry::new(d, w, h));
        let b = overhang_sky_view_factor(&OverhangGeometry::new(d + extra, w, h));
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn facade_components_are_physical(alt in -30.0f64..90.0, az in 0.0f64..360.0, facade in 0.0f64..360.0, dni in 0.0f64..1000.0, dhi in 0.0f64..500.0, ghi in 0.0f64..1200.0) {
        let rec = HourlyRecord { dry_bulb: 20.0, ghi, dni, dhi };
        let f = facade_irradiance(&rec, &sun(alt, az), facade, DEFAULT_ALBEDO);
        prop_assert!(f.beam >= 0.0 && f.sky_diffuse >= 0.0 && f.ground_reflected >= 0.0);
        prop_assert!(f.beam <= dni + 1e-9);
        if alt <= 0.0 {
            prop_assert_eq!(f.beam, 0.0);
        }
    }

    #[test]
    fn comfort_translation_invariance(t_rm in 15.0f64..25.0, temps in prop::collection::vec(10.0f64..40.0, 24 * 365), shift in -3.0f64..3.0) {
        // Shifting both the band and the temperatures leaves the score unchanged.
        let band = comfort_limits(&RunningMeanSeries { values: vec![t_rm; 365] }, ComfortCategory::II);
        let shifted_band = ComfortBand { lower: band.lower.iter().map(|x| x + shift).collect(), upper: band.upper.iter().map(|x| x + shift).collect() };
        let shifted: Vec<f64> = temps.iter().map(|t| t + shift).collect();
        let a = degree_hours(&temps, &band).unwrap();
        let b = degree_hours(&shifted, &shifted_band).unwrap();
        prop_assert!((a.tdh - b.tdh).abs() <= 1e-6 * a.tdh.max(1.0));
    }

    #[test]
    fn wider_category_never_scores_worse(t_rm in 5.0f64..32.0, temps in prop::collection::vec(5.0f64..40.0, 24 * 365)) {
        let rm = RunningMeanSeries { values: vec![t_rm; 365] };
        let score = |c| degree_hours(&temps, &comfort_limits(&rm, c)).unwrap();
        let (i, ii, iii) = (score(ComfortCategory::I), score(ComfortCategory::II), score(ComfortCategory::III));
        prop_assert!(iii.hdh <= ii.hdh && ii.hdh <= i.hdh);
        prop_assert!(iii.cdh <= ii.cdh && ii.cdh <= i.cdh);
    }

    #[test]
    fn monthly_scores_add_up(t_rm in 10.0f64..25.0, temps in prop::collection::vec(5.0f64..40.0, 24 * 365)) {
        let band = comfort_limits(&RunningMeanSeries { values: vec![t_rm; 365] }, ComfortCategory::II);
        let annual = degree_hours(&temps, &band).unwrap();
        let months = monthly_degree_hours(&temps, &band).unwrap();
        let hdh: f64 = months.iter().map(|m| m.hdh).sum();
        let cdh: f64 = months.iter().map(|m| m.cdh).sum();
        prop_assert!((hdh - annual.hdh).abs() <= 1e-9 * annual.hdh.max(1.0));
        prop_assert!((cdh - annual.cdh).abs() <= 1e-9 * annual.cdh.max(1.0));
        prop_assert_eq!(annual.tdh, annual.hdh + annual.cdh);
    }
}

fn room_strategy() -> impl Strategy<Value = RoomScenario> {
    (0.01f64..7.0, 0.1f64..2.0, 0usize..3, 0.2f64..1.2).prop_map(|(width, ach, cap, u)| {
        let mut room = RoomScenario { window_width: width, infiltration_ach: ach, ..RoomScenario::default() };
        room.constructions.capacity = [CapacityClass::Light, CapacityClass::Medium, CapacityClass::Heavy][cap];
        room.constructions.u_wall = u;
        room
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn more_gain_never_cools(room in room_strategy(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let zone = build_zone(&room).unwrap();
        let outdoor: Vec<f64> = (0..8760).map(|h| 15.0 + 8.0 * ((h % 24) as f64 / 24.0 * std::f64::consts::TAU).sin()).collect();
        let low: Vec<f64> = (0..8760).map(|_| rng.gen_range(0.0..800.0)).collect();
        let high: Vec<f64> = low.iter().map(|g| g + rng.gen_range(0.0..400.0)).collect();
        let a = zone.run_year(&outdoor, 14.0, &low).unwrap();
        let b = zone.run_year(&outdoor, 14.0, &high).unwrap();
        prop_assert!(a.values.iter().zip(&b.values).all(|(x, y)| *y >= *x - 1e-9));
        prop_assert_eq!(&a, &zone.run_year(&outdoor, 14.0, &low).unwrap());
    }

    #[test]
    fn each_step_balances_energy(room in room_strategy(), mass in 5.0f64..30.0, outdoor in -5.0f64..35.0, ground in 5.0f64..20.0, gain in 0.0f64..3000.0) {
        let z = build_zone(&room).unwrap();
        prop_assume!(z.substeps() == 1);
        let n = z.step(mass, outdoor, ground, gain);
        let boundary = z.mass_boundary_temperature(outdoor, ground);
        let air = z.h_ventilation * (outdoor - n.air) + z.h_air_surface * (n.surface - n.air);
        let surface = z.surface_gain_share * gain + z.h_window * (outdoor - n.surface) + z.h_air_surface * (n.air - n.surface)
            + z.h_surface_mass * (n.mass_mean - n.surface);
        let stored = z.capacitance * (n.mass - mass) / 3600.0;
        let into_mass = z.mass_gain_share * gain + z.h_mass_boundary * (boundary - n.mass_mean) + z.h_surface_mass * (n.surface - n.mass_mean);
        prop_assert!(air.abs() < 1e-6, "air {air}");
        prop_assert!(surface.abs() < 1e-6, "surface {surface}");
        prop_assert!((stored - into_mass).abs() < 1e-6, "mass {stored} vs {into_mass}");
    }
}
