// Adaptive comfort limits from the outdoor running mean, and the
// degree-hours of a free-running indoor temperature trace.

use std::error::Error;

use winshade::comfort::{comfort_limits, degree_hours, ComfortCategory};
use winshade::weather::synthetic::SyntheticClimate;
use winshade::weather::{calendar_date, running_mean, DEFAULT_RUNNING_MEAN_ALPHA};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let t_rm = running_mean(&weather, DEFAULT_RUNNING_MEAN_ALPHA)?;

    for cat in [ComfortCategory::I, ComfortCategory::II, ComfortCategory::III] {
        let band = comfort_limits(&t_rm, cat);
        for day in [14, 105, 196, 288] {
            let (m, d) = calendar_date(day);
            println!("{cat:?} {d:02}/{m:02}: T_rm {:5.2}  band [{:5.2}, {:5.2}]", t_rm.values[day], band.lower[day], band.upper[day]);
        }
    }

    // Outdoor air as if it were the indoor operative temperature.
    let band = comfort_limits(&t_rm, ComfortCategory::II);
    let outdoor: Vec<f64> = weather.dry_bulb().collect();
    let s = degree_hours(&outdoor, &band)?;
    println!("outdoor air: HDH {:.0}  CDH {:.0}  TDH {:.0} K·h", s.hdh, s.cdh, s.tdh);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
