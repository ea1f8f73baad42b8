// A coarse sweep (45° orientation steps, 1 m width steps) written to the
// same three files the full study produces.

use std::error::Error;

use winshade::cli::sweep_files;
use winshade::config::RunConfig;
use winshade::sweep::{orientation_steps, width_steps};
use winshade::weather::synthetic::SyntheticClimate;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let weather = SyntheticClimate::coimbra().generate(1);
    let mut config = RunConfig::default();
    config.grid.orientations = orientation_steps(45.0);
    config.grid.widths = width_steps(0.01, 1.0, 7.0);

    let dir = std::env::temp_dir().join(format!("winshade-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for (name, body) in sweep_files(&weather, &config, 0)? {
        std::fs::write(dir.join(name), &body)?;
        println!("{name}: {} bytes", body.len());
        if name.ends_with(".csv") {
            for line in body.lines().take(4) {
                println!("  {line}");
            }
        }
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
