//! Command-line front end: `simulate`, `sweep` and `report`.
//!
//! Exit status 0 on success, 2 for bad input (missing files, malformed
//! config or weather), 1 when a computation fails.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::comfort::{degree_hours, monthly_degree_hours, DiscomfortScore};
use crate::config::{ConfigError, RunConfig};
use crate::report::{self, ReportError};
use crate::sweep::{orientation_optima, relative_metrics, run_sweep, Study, SweepError};
use crate::weather::synthetic::SyntheticClimate;
use crate::weather::{read_epw, WeatherError, WeatherSeries};
use crate::zone::ZoneError;

/// Prefix of the `--weather` value selecting a built-in synthetic year.
pub const SYNTHETIC_PREFIX: &str = "synthetic:";

#[derive(Debug, Parser)]
#[command(name = "winshade", version, about = "Window size and overhang depth study for a naturally ventilated room")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one scenario for a year and write simulation.json.
    Simulate(SimulateArgs),
    /// Run the orientation × width sweep and write sweep.csv, optima.csv, figure2.json.
    Sweep(SweepArgs),
    /// Summarize the optima of a finished sweep.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// EPW file, or synthetic:coimbra.
    #[arg(long)]
    pub weather: Option<String>,
    /// key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for synthetic weather.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Facade azimuth, degrees clockwise from North.
    #[arg(long, default_value_t = 180.0)]
    pub orientation: f64,
    /// Window width, m.
    #[arg(long, default_value_t = 2.0)]
    pub width: f64,
    /// Overhang depth, m.
    #[arg(long, default_value_t = 0.0)]
    pub depth: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory holding the sweep results.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("weather file {path}: {source}")]
    Weather {
        path: String,
        #[source]
        source: WeatherError,
    },
    #[error("no weather given; pass --weather or set `weather` in the config")]
    NoWeather,
    #[error("unknown synthetic climate {0:?}")]
    UnknownSynthetic(String),
    #[error("invalid scenario: {0}")]
    Scenario(ZoneError),
    #[error(transparent)]
    Sweep(SweepError),
    #[error("simulation failed: {0}")]
    Simulation(ZoneError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Simulation(_) => 1,
            Self::Sweep(SweepError::Grid(_)) | Self::Sweep(SweepError::Weather(_)) => 2,
            Self::Sweep(_) => 1,
            _ => 2,
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => cmd_simulate(&a).map(|path| println!("wrote {}", path.display())),
        Command::Sweep(a) => cmd_sweep(&a).map(|paths| {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }),
        Command::Report(a) => cmd_report(&a).map(|text| print!("{text}")),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    Ok(match path {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    })
}

/// Loads weather from `--weather`, falling back to the config entry.
pub fn load_weather(arg: Option<&str>, config: &RunConfig, seed: u64) -> Result<WeatherSeries, CliError> {
    let source = match (arg, &config.weather) {
        (Some(a), _) => a.to_string(),
        (None, Some(p)) => p.display().to_string(),
        (None, None) => return Err(CliError::NoWeather),
    };
    if let Some(name) = source.strip_prefix(SYNTHETIC_PREFIX) {
        return match name {
            "coimbra" => Ok(SyntheticClimate::coimbra().generate(seed)),
            other => Err(CliError::UnknownSynthetic(other.to_string())),
        };
    }
    read_epw(&source).map_err(|source_err| CliError::Weather { path: source, source: source_err })
}

#[derive(Debug, Serialize)]
struct SimulationInputs {
    weather: String,
    location: String,
    latitude: f64,
    longitude: f64,
    orientation_deg: f64,
    width_m: f64,
    depth_m: f64,
    wfr: f64,
    wwr: f64,
    room: crate::zone::RoomScenario,
    settings: crate::sweep::StudySettings,
}

#[derive(Debug, Serialize)]
struct MonthScore {
    month: usize,
    hdh: f64,
    cdh: f64,
    tdh: f64,
}

#[derive(Debug, Serialize)]
struct SimulationOutput {
    inputs: SimulationInputs,
    annual: DiscomfortScore,
    monthly: Vec<MonthScore>,
    comfort_lower: Vec<f64>,
    comfort_upper: Vec<f64>,
    operative_temperature: Vec<f64>,
}

/// Runs one scenario and writes `simulation.json` into the output directory.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<PathBuf, CliError> {
    let config = load_config(args.common.config.as_deref())?;
    let weather = load_weather(args.common.weather.as_deref(), &config, args.common.seed)?;
    let study = Study::new(&weather, config.room.clone(), config.settings).map_err(sweep_input_error)?;
    let scenario = study.scenario(args.orientation, args.width, args.depth);
    scenario.validate().map_err(CliError::Scenario)?;
    let t_op = study.operative(args.orientation, args.width, args.depth).map_err(CliError::Simulation)?;
    let annual = degree_hours(&t_op, study.band()).expect("annual series matches the band");
    let monthly = monthly_degree_hours(&t_op, study.band())
        .expect("annual series matches the band")
        .into_iter()
        .enumerate()
        .map(|(m, s)| MonthScore { month: m + 1, hdh: s.hdh, cdh: s.cdh, tdh: s.tdh })
        .collect();
    let output = SimulationOutput {
        inputs: SimulationInputs {
            weather: args.common.weather.clone().or_else(|| config.weather.as_ref().map(|p| p.display().to_string())).unwrap_or_default(),
            location: weather.location.clone(),
            latitude: weather.site.latitude,
            longitude: weather.site.longitude,
            orientation_deg: args.orientation,
            width_m: args.width,
            depth_m: args.depth,
            wfr: scenario.wfr(),
            wwr: scenario.wwr(),
            room: scenario,
            settings: config.settings,
        },
        annual,
        monthly,
        comfort_lower: study.band().lower.clone(),
        comfort_upper: study.band().upper.clone(),
        operative_temperature: t_op,
    };
    let dir = args.common.out.clone().unwrap_or(config.out);
    let json = serde_json::to_string_pretty(&output).expect("simulation output serializes");
    let path = dir.join("simulation.json");
    write_files(&dir, &[(&path, json)])?;
    Ok(path)
}

fn sweep_input_error(e: SweepError) -> CliError {
    match e {
        SweepError::Zone(z) => CliError::Scenario(z),
        other => CliError::Sweep(other),
    }
}

/// Runs the full sweep and writes the three result files.
pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<PathBuf>, CliError> {
    let config = load_config(args.common.config.as_deref())?;
    let weather = load_weather(args.common.weather.as_deref(), &config, args.common.seed)?;
    let dir = args.common.out.clone().unwrap_or_else(|| config.out.clone());
    let workers = args.workers.unwrap_or(config.workers);
    let files = sweep_files(&weather, &config, workers)?;
    let paths: Vec<PathBuf> = files.iter().map(|(name, _)| dir.join(name)).collect();
    let pairs: Vec<(&Path, String)> = paths.iter().map(PathBuf::as_path).zip(files.into_iter().map(|(_, body)| body)).collect();
    write_files(&dir, &pairs)?;
    Ok(paths)
}

/// Contents of `sweep.csv`, `optima.csv` and `figure2.json` for a config.
pub fn sweep_files(weather: &WeatherSeries, config: &RunConfig, workers: usize) -> Result<Vec<(&'static str, String)>, CliError> {
    config.grid.validate().map_err(CliError::Sweep)?;
    let study = Study::new(weather, config.room.clone(), config.settings).map_err(sweep_input_error)?;
    let rows = run_sweep(&config.grid, &study, workers).map_err(CliError::Sweep)?;
    let optima = orientation_optima(&rows).map_err(CliError::Sweep)?;
    let windowless = study.windowless_score().map_err(CliError::Simulation)?;
    let metrics = relative_metrics(&rows, &optima, windowless.tdh).map_err(CliError::Sweep)?;
    let figure = report::figure_data(&rows, &optima, &metrics);
    Ok(vec![
        (report::SWEEP_CSV, report::sweep_csv(&rows, &metrics)),
        (report::OPTIMA_CSV, report::optima_csv(&optima, &metrics)),
        (report::FIGURE_JSON, serde_json::to_string_pretty(&figure).expect("figure data serializes")),
    ])
}

/// Reads `optima.csv` and returns the printed summary.
pub fn cmd_report(args: &ReportArgs) -> Result<String, CliError> {
    let dir = match &args.out {
        Some(d) => d.clone(),
        None => load_config(args.config.as_deref())?.out,
    };
    let optima = report::read_optima(&dir)?;
    Ok(report::summary(&optima)?)
}

fn write_files(dir: &Path, files: &[(&Path, String)]) -> Result<(), CliError> {
    let werr = |path: &Path, source| CliError::Write { path: path.display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(|e| werr(dir, e))?;
    for (path, body) in files {
        std::fs::write(path, body).map_err(|e| werr(path, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["winshade", "simulate", "--weather", "synthetic:coimbra", "--orientation", "90", "--width", "1.5"]).unwrap();
        match cli.command {
            Command::Simulate(a) => {
                assert_eq!(a.orientation, 90.0);
                assert_eq!(a.width, 1.5);
                assert_eq!(a.depth, 0.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["winshade", "sweep", "--workers", "4"]).is_ok());
        assert!(Cli::try_parse_from(["winshade", "paint"]).is_err());
    }

    #[test]
    fn missing_weather_is_input_error() {
        let err = load_weather(Some("/nonexistent/file.epw"), &RunConfig::default(), 1).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("/nonexistent/file.epw"));
        assert!(matches!(load_weather(None, &RunConfig::default(), 1), Err(CliError::NoWeather)));
        assert!(matches!(load_weather(Some("synthetic:mars"), &RunConfig::default(), 1), Err(CliError::UnknownSynthetic(_))));
    }

    #[test]
    fn report_without_results_exits_two() {
        let dir = tempfile::tempdir().unwrap();
        let code = run(["winshade", "report", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code, 2);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }
}
