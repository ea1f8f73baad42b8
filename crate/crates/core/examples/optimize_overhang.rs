// Best overhang depth for a few window widths on a south and a west facade.

use std::error::Error;

use winshade::sweep::{DepthSearch, Study, StudySettings};
use winshade::weather::synthetic::SyntheticClimate;
use winshade::zone::RoomScenario;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let study = Study::new(&weather, RoomScenario::default(), StudySettings::default())?;
    let search = DepthSearch::default();
    println!("TDH without window: {:.0} K·h", study.windowless_score()?.tdh);
    println!("facade  width  d_opt  TDH(d_opt)  TDH(0)  evaluations");
    for az in [180.0, 270.0] {
        for width in [1.0, 3.0, 5.0] {
            let best = study.optimize_overhang(az, width, &search)?;
            println!(
                "{az:>6}  {width:5.1}  {:5.3}  {:10.0}  {:6.0}  {}",
                best.depth,
                best.score.tdh,
                best.no_overhang.tdh,
                best.evaluations.len()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
