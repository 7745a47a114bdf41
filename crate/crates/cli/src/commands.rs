use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use delaycomp::{run, sweep_delay, Controller, Trajectory64};
use thiserror::Error;

use crate::config::{parse_config, Config, ConfigError};
use crate::output::{comparison_report, metrics_text, write_sweep, write_trajectory_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DIVERGED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(#[from] ConfigError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("simulation: {0}")]
    Sim(#[from] delaycomp::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Usage(_) | CliError::Config(_) | CliError::Sim(_) => EXIT_USAGE,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    Ok(parse_config(&text)?)
}

fn prepare_out_dir(config: &Config) -> Result<&Path, CliError> {
    let dir = config.out_dir.as_path();
    fs::create_dir_all(dir).map_err(io_error(dir))?;
    Ok(dir)
}

fn write_run(dir: &Path, name: &str, traj: &Trajectory64, metrics: &delaycomp::Metrics64) -> Result<(), CliError> {
    let csv = dir.join(format!("{name}.csv"));
    write_trajectory_file(&csv, traj).map_err(io_error(&csv))?;
    let txt = dir.join(format!("{name}.metrics.txt"));
    fs::write(&txt, metrics_text(name, metrics, traj.termination())).map_err(io_error(&txt))?;
    Ok(())
}

/// Runs one controller and writes `<name>.csv` plus `<name>.metrics.txt`.
/// Returns [`EXIT_DIVERGED`] when the run diverged.
pub fn cmd_run(config: &Config, controller: Controller) -> Result<i32, CliError> {
    let scenario = config.scenario()?.with_controller(controller);
    let dir = prepare_out_dir(config)?;
    let (traj, metrics) = run(&scenario)?;
    write_run(dir, controller.name(), &traj, &metrics)?;
    println!("{}", comparison_report(&[(controller.name(), &metrics)]).trim_end());
    Ok(if metrics.diverged { EXIT_DIVERGED } else { EXIT_OK })
}

/// Naive feedback against the window predictor on identical settings.
pub fn cmd_compare(config: &Config) -> Result<i32, CliError> {
    let base = config.scenario()?;
    let dir = prepare_out_dir(config)?;
    let mut results = Vec::new();
    for controller in [Controller::Naive, Controller::PredictorWindow] {
        let (traj, metrics) = run(&base.clone().with_controller(controller))?;
        write_run(dir, controller.name(), &traj, &metrics)?;
        results.push((controller.name(), metrics));
    }
    let rows: Vec<_> = results.iter().map(|(n, m)| (*n, m)).collect();
    let report = comparison_report(&rows);
    let path = dir.join("compare.txt");
    fs::write(&path, &report).map_err(io_error(&path))?;
    print!("{report}");
    Ok(EXIT_OK)
}

/// Delays from `h_min` to `h_max` in `steps` points, snapped to multiples of
/// `dt` and deduplicated.
pub fn sweep_grid(h_min: f64, h_max: f64, steps: usize, dt: f64) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !h_min.is_finite() || !h_max.is_finite() || h_min < 0.0 {
        return Err(CliError::Usage("--h-min and --h-max must be finite and non-negative".into()));
    }
    if h_min > h_max {
        return Err(CliError::Usage(format!("empty delay range [{h_min}, {h_max}]")));
    }
    let mut grid: Vec<f64> = (0..steps)
        .map(|i| {
            let h = if steps == 1 {
                h_min
            } else {
                h_min + (h_max - h_min) * i as f64 / (steps - 1) as f64
            };
            (h / dt).round() * dt
        })
        .collect();
    grid.dedup();
    Ok(grid)
}

/// Writes `sweep.csv` with naive and predictor metrics per delay.
pub fn cmd_sweep(config: &Config, h_min: f64, h_max: f64, steps: usize) -> Result<i32, CliError> {
    let delays = sweep_grid(h_min, h_max, steps, config.dt)?;
    let mut base = config.scenario()?;
    if !base.controller.is_predictor() {
        base.controller = Controller::PredictorWindow;
    }
    let dir = prepare_out_dir(config)?;
    let rows = sweep_delay(&base, &delays)?;
    let path = dir.join("sweep.csv");
    let file = fs::File::create(&path).map_err(io_error(&path))?;
    write_sweep(io::BufWriter::new(file), &rows).map_err(io_error(&path))?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_snaps_and_dedups() {
        assert_eq!(sweep_grid(0.0, 0.0, 1, 0.01).unwrap(), vec![0.0]);
        let g = sweep_grid(0.0, 0.02, 5, 0.01).unwrap();
        assert_eq!(g.len(), 3);
        assert!(matches!(sweep_grid(0.3, 0.1, 3, 0.01), Err(CliError::Usage(_))));
        assert!(matches!(sweep_grid(0.0, 0.1, 0, 0.01), Err(CliError::Usage(_))));
        assert!(matches!(sweep_grid(-0.1, 0.1, 3, 0.01), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), EXIT_USAGE);
        let io = CliError::Io {
            path: PathBuf::from("x"),
            source: io::Error::new(io::ErrorKind::NotFound, "gone"),
        };
        assert_eq!(io.exit_code(), EXIT_IO);
    }
}
