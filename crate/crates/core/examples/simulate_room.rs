// One year of the reference room with a south window and a 0.5 m overhang.

use std::error::Error;
use std::time::Instant;

use winshade::comfort::{comfort_limits, monthly_degree_hours, ComfortCategory};
use winshade::solar::DEFAULT_ALBEDO;
use winshade::weather::synthetic::SyntheticClimate;
use winshade::weather::{running_mean, DEFAULT_RUNNING_MEAN_ALPHA};
use winshade::zone::{build_zone, simulate_year, RoomScenario};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let room = RoomScenario { facade_azimuth: 180.0, window_width: 2.5, overhang_depth: 0.5, ..RoomScenario::default() };
    let zone = build_zone(&room)?;
    println!("WFR {:.3}  WWR {:.3}  H_tot {:.1} W/K  C {:.2} MJ/K", room.wfr(), room.wwr(), zone.h_total(), zone.capacitance / 1e6);

    let start = Instant::now();
    let t_op = simulate_year(&room, &weather, DEFAULT_ALBEDO)?;
    let elapsed = start.elapsed();

    let band = comfort_limits(&running_mean(&weather, DEFAULT_RUNNING_MEAN_ALPHA)?, ComfortCategory::II);
    let months = monthly_degree_hours(&t_op.values, &band)?;
    println!("month   HDH    CDH");
    for (m, s) in months.iter().enumerate() {
        println!("{:>5}  {:5.0}  {:5.0}", m + 1, s.hdh, s.cdh);
    }
    let total: f64 = months.iter().map(|s| s.tdh).sum();
    println!("TDH {total:.0} K·h ({elapsed:.2?} for the year)");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
