// Sun position and facade irradiance for the synthetic Coimbra year.

use std::error::Error;

use winshade::solar::{facade_irradiance, solar_hour, solar_position, sun_for_record, DEFAULT_ALBEDO};
use winshade::weather::synthetic::SyntheticClimate;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let site = weather.site;

    // Summer solstice (day 172), hourly from 06:00 to 20:00 clock time.
    println!("clock  solar  altitude  azimuth");
    for clock in 6..=20 {
        let sh = solar_hour(&site, 172, clock as f64);
        let p = solar_position(&site, 172, sh);
        println!("{clock:>5}  {sh:5.2}  {:8.2}  {:7.2}", p.altitude, p.azimuth);
    }

    // 21 June 13:00 interval, every cardinal facade.
    let hour = 171 * 24 + 12;
    let pos = sun_for_record(&site, hour);
    let rec = weather.records()[hour];
    for az in [0.0, 90.0, 180.0, 270.0] {
        let f = facade_irradiance(&rec, &pos, az, DEFAULT_ALBEDO);
        println!("facade {az:>3}°: beam {:6.1}  sky {:5.1}  ground {:5.1} W/m²", f.beam, f.sky_diffuse, f.ground_reflected);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
