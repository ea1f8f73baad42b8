// Generates the synthetic Coimbra year, writes it as EPW and reads it back.

use std::error::Error;

use winshade::weather::synthetic::SyntheticClimate;
use winshade::weather::{month_hours, read_epw, to_epw_string};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let climate = SyntheticClimate::coimbra();
    let weather = climate.generate(7);

    let path = std::env::temp_dir().join(format!("winshade-coimbra-{}.epw", std::process::id()));
    std::fs::write(&path, to_epw_string(&weather))?;
    let back = read_epw(&path)?;
    std::fs::remove_file(&path)?;
    println!("{} at {:.2}, {:.2}; {} hours", back.location, back.site.latitude, back.site.longitude, back.records().len());

    println!("month  T mean  GHI kWh/m²/day");
    for m in 0..12 {
        let hours = month_hours(m);
        let n = hours.len() as f64;
        let recs = &back.records()[hours];
        let t = recs.iter().map(|r| r.dry_bulb).sum::<f64>() / n;
        let g = recs.iter().map(|r| r.ghi).sum::<f64>() * 24.0 / n / 1000.0;
        println!("{:>5}  {t:6.2}  {g:5.2}", m + 1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
