//! Thermal sizing of a single window and its horizontal overhang in a
//! naturally ventilated room.
//!
//! A year of hourly weather drives a five-resistance, one-capacitance zone
//! model. Indoor operative temperatures are scored against an adaptive comfort
//! band as degree-hours of discomfort, and the study sweeps facade orientation
//! and window width, optimizing the overhang depth for every pair.
//!
//! ```no_run
//! use winshade::sweep::{Study, StudySettings};
//! use winshade::weather::synthetic::SyntheticClimate;
//! use winshade::zone::RoomScenario;
//!
//! let weather = SyntheticClimate::coimbra().generate(1);
//! let study = Study::new(&weather, RoomScenario::default(), StudySettings::default()).unwrap();
//! let best = study.optimize_overhang(180.0, 2.0, &Default::default()).unwrap();
//! println!("{:.2} m overhang, {:.0} K·h", best.depth, best.score.tdh);
//! ```

pub mod cli;
pub mod comfort;
pub mod config;
pub mod report;
pub mod solar;
pub mod sweep;
pub mod weather;
pub mod zone;
