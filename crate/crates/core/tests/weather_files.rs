use std::path::Path;

use approx::assert_abs_diff_eq;
use winshade::weather::synthetic::SyntheticClimate;
use winshade::weather::{parse_epw, read_epw, to_epw_string, WeatherError, HOURS_PER_YEAR};

fn fixture() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/era5_tmy_45n_8e.epw")
}

#[test]
fn reanalysis_file_header_and_first_row() {
    let w = read_epw(fixture()).unwrap();
    assert_eq!(w.site.latitude, 45.0);
    assert_eq!(w.site.longitude, 8.0);
    assert_eq!(w.site.utc_offset, 1.0);
    assert_eq!(w.site.elevation, 250.0);
    assert_eq!(w.records().len(), HOURS_PER_YEAR);
    let first = w.records()[0];
    assert_eq!(first.dry_bulb, 2.04);
    assert_eq!((first.ghi, first.dni, first.dhi), (0.0, 0.0, 0.0));
}

#[test]
fn reanalysis_file_is_plausible() {
    let w = read_epw(fixture()).unwrap();
    let (lo, hi) = w.dry_bulb_range();
    assert!(lo > -20.0 && hi < 45.0, "{lo} {hi}");
    let mean = w.annual_mean_dry_bulb();
    assert!((5.0..20.0).contains(&mean), "{mean}");
    let annual_ghi: f64 = w.records().iter().map(|r| r.ghi).sum::<f64>() / 1000.0;
    assert!((1000.0..1800.0).contains(&annual_ghi), "{annual_ghi} kWh/m2");
    assert!(w.records().iter().all(|r| r.dni >= 0.0 && r.dhi >= 0.0));
}

#[test]
fn synthetic_coimbra_survives_epw_round_trip() {
    let w = SyntheticClimate::coimbra().generate(3);
    let text = to_epw_string(&w);
    assert!(text.starts_with("LOCATION,"));
    let back = parse_epw(text.as_bytes()).unwrap();
    assert_abs_diff_eq!(back.site.latitude, 40.2);
    assert_abs_diff_eq!(back.site.longitude, -8.42);
    assert_eq!(back.site.utc_offset, 0.0);
    assert_eq!(back.records(), w.records());
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(read_epw("/no/such/file.epw"), Err(WeatherError::Io { .. })));
}
