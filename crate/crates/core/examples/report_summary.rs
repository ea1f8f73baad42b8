// Runs a coarse sweep, then prints the per-orientation summary from its
// optima file.

use std::error::Error;

use winshade::cli::sweep_files;
use winshade::config::RunConfig;
use winshade::report::{parse_optima, summary, OPTIMA_CSV};
use winshade::sweep::{orientation_steps, width_steps};
use winshade::weather::synthetic::SyntheticClimate;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let mut config = RunConfig::default();
    config.grid.orientations = orientation_steps(45.0);
    config.grid.widths = width_steps(0.01, 1.0, 7.0);

    let files = sweep_files(&weather, &config, 0)?;
    let optima = files.iter().find(|(name, _)| *name == OPTIMA_CSV).map(|(_, body)| body.as_str()).ok_or("no optima file")?;
    print!("{}", summary(&parse_optima(optima)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
