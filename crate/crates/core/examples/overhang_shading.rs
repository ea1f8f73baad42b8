// Sunlit fraction and sky view factor of a 2 m tall window under overhangs
// of increasing depth.

use std::error::Error;

use winshade::solar::{overhang_beam_fraction, overhang_sky_view_factor, solar_position, OverhangGeometry};
use winshade::weather::Site;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let site = Site::new(40.2, -8.42, 0.0, 141.0)?;
    let noon_summer = solar_position(&site, 172, 12.0);
    let afternoon_summer = solar_position(&site, 172, 15.0);
    let noon_winter = solar_position(&site, 355, 12.0);

    println!("depth  svf    summer noon  summer 15h  winter noon");
    for i in 0..=10 {
        let geom = OverhangGeometry::new(i as f64 * 0.2, 2.0, 2.0);
        println!(
            "{:5.2}  {:.3}  {:11.3}  {:10.3}  {:11.3}",
            geom.depth,
            overhang_sky_view_factor(&geom),
            overhang_beam_fraction(&geom, &noon_summer, 180.0),
            overhang_beam_fraction(&geom, &afternoon_summer, 180.0),
            overhang_beam_fraction(&geom, &noon_winter, 180.0),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
