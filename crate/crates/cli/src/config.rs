//! Flat `key = value` configuration with `#` comments.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use delaycomp::{delay_steps, design_gain, params_to_lti, Controller, LtiPlant64, RobotParams64, Scenario64, Setpoint, Vector};

pub const KEYS: [&str; 18] = [
    "mass",
    "inertia",
    "friction_v",
    "friction_w",
    "wheel_base",
    "gain_force",
    "gain_torque",
    "delay",
    "dt",
    "horizon",
    "v0",
    "w0",
    "v_ref",
    "w_ref",
    "poles",
    "controller",
    "e_max",
    "out_dir",
];

const REQUIRED: [&str; 10] = [
    "mass",
    "inertia",
    "friction_v",
    "friction_w",
    "wheel_base",
    "gain_force",
    "gain_torque",
    "delay",
    "v_ref",
    "w_ref",
];

/// A configuration problem, always tied to a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: `{}`: {}", self.key, self.message),
            None => write!(f, "`{}`: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub robot: RobotParams64,
    pub delay: f64,
    pub dt: f64,
    pub horizon: f64,
    pub v0: f64,
    pub w0: f64,
    pub v_ref: f64,
    pub w_ref: f64,
    pub poles: [f64; 2],
    pub controller: Controller,
    pub e_max: Option<f64>,
    pub out_dir: PathBuf,
}

struct Entries {
    values: HashMap<String, (String, usize)>,
}

impl Entries {
    fn raw(&self, key: &str) -> Option<(&str, usize)> {
        self.values.get(key).map(|(v, l)| (v.as_str(), *l))
    }

    fn number(&self, key: &str) -> Result<Option<(f64, usize)>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some((text, line)) => parse_number(key, text, line).map(|x| Some((x, line))),
        }
    }

    fn required(&self, key: &str) -> Result<(f64, usize), ConfigError> {
        self.number(key)?
            .ok_or_else(|| ConfigError::new(key, None, "missing required key"))
    }

    fn optional(&self, key: &str, default: f64) -> Result<(f64, Option<usize>), ConfigError> {
        Ok(match self.number(key)? {
            Some((x, line)) => (x, Some(line)),
            None => (default, None),
        })
    }
}

fn parse_number(key: &str, text: &str, line: usize) -> Result<f64, ConfigError> {
    let x: f64 = text
        .parse()
        .map_err(|_| ConfigError::new(key, Some(line), format!("expected a number, got `{text}`")))?;
    if !x.is_finite() {
        return Err(ConfigError::new(key, Some(line), "value must be finite"));
    }
    Ok(x)
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut values = HashMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            let token = content.split_whitespace().next().unwrap_or(content);
            return Err(ConfigError::new(token, Some(line), "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(key, Some(line), "unknown key"));
        }
        if value.is_empty() {
            return Err(ConfigError::new(key, Some(line), "empty value"));
        }
        if let Some((_, first)) = values.get(key) {
            return Err(ConfigError::new(key, Some(line), format!("duplicate key (first set on line {first})")));
        }
        values.insert(key.to_string(), (value.to_string(), line));
    }
    Ok(Entries { values })
}

fn positive(key: &str, (x, line): (f64, usize)) -> Result<f64, ConfigError> {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::new(key, Some(line), format!("must be positive, got {x}")))
    }
}

fn non_negative(key: &str, (x, line): (f64, usize)) -> Result<f64, ConfigError> {
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::new(key, Some(line), format!("must be non-negative, got {x}")))
    }
}

fn non_zero(key: &str, (x, line): (f64, usize)) -> Result<f64, ConfigError> {
    if x != 0.0 {
        Ok(x)
    } else {
        Err(ConfigError::new(key, Some(line), "must be non-zero"))
    }
}

fn parse_poles(entries: &Entries) -> Result<[f64; 2], ConfigError> {
    let Some((text, line)) = entries.raw("poles") else {
        return Ok([-5.0, -5.0]);
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(ConfigError::new(
            "poles",
            Some(line),
            format!("expected two comma-separated values, got {}", parts.len()),
        ));
    }
    let mut poles = [0.0; 2];
    for (slot, part) in poles.iter_mut().zip(parts) {
        let p = parse_number("poles", part, line)?;
        if p >= 0.0 {
            return Err(ConfigError::new("poles", Some(line), format!("pole must be negative, got {p}")));
        }
        *slot = p;
    }
    Ok(poles)
}

/// Parses and validates a configuration file body.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let entries = tokenize(text)?;
    for key in REQUIRED {
        entries.required(key)?;
    }

    let robot = RobotParams64 {
        mass: positive("mass", entries.required("mass")?)?,
        inertia: positive("inertia", entries.required("inertia")?)?,
        friction_v: non_negative("friction_v", entries.required("friction_v")?)?,
        friction_w: non_negative("friction_w", entries.required("friction_w")?)?,
        wheel_base: positive("wheel_base", entries.required("wheel_base")?)?,
        gain_force: non_zero("gain_force", entries.required("gain_force")?)?,
        gain_torque: non_zero("gain_torque", entries.required("gain_torque")?)?,
    };
    let delay_entry = entries.required("delay")?;
    let delay = non_negative("delay", delay_entry)?;

    let (dt, dt_line) = entries.optional("dt", 0.01)?;
    if dt <= 0.0 {
        return Err(ConfigError::new("dt", dt_line, format!("must be positive, got {dt}")));
    }
    let (horizon, horizon_line) = entries.optional("horizon", 10.0)?;
    if horizon < dt {
        return Err(ConfigError::new(
            "horizon",
            horizon_line,
            format!("must be at least dt = {dt}, got {horizon}"),
        ));
    }
    if delay_steps(delay, dt).is_err() {
        return Err(ConfigError::new(
            "delay",
            Some(delay_entry.1),
            format!("delay/dt must be an integer, got {delay}/{dt} = {}", delay / dt),
        ));
    }

    let controller = match entries.raw("controller") {
        None => Controller::PredictorWindow,
        Some((name, line)) => name
            .parse()
            .map_err(|e: delaycomp::Error| ConfigError::new("controller", Some(line), e.to_string()))?,
    };
    let e_max = match entries.number("e_max")? {
        None => None,
        Some(entry) => Some(positive("e_max", entry)?),
    };
    let out_dir = entries
        .raw("out_dir")
        .map_or_else(|| PathBuf::from("out"), |(p, _)| PathBuf::from(p));

    Ok(Config {
        robot,
        delay,
        dt,
        horizon,
        v0: entries.optional("v0", 0.0)?.0,
        w0: entries.optional("w0", 0.0)?.0,
        v_ref: entries.required("v_ref")?.0,
        w_ref: entries.required("w_ref")?.0,
        poles: parse_poles(&entries)?,
        controller,
        e_max,
        out_dir,
    })
}

impl Config {
    pub fn plant(&self) -> Result<LtiPlant64, ConfigError> {
        params_to_lti(&self.robot, self.delay).map_err(|e| ConfigError::new("delay", None, e.to_string()))
    }

    /// Closed-loop scenario for the configured controller.
    pub fn scenario(&self) -> Result<Scenario64, ConfigError> {
        let plant = self.plant()?;
        let gain = design_gain(&plant, &self.poles).map_err(|e| ConfigError::new("poles", None, e.to_string()))?;
        let reference = Vector::from_slice(&[self.v_ref, self.w_ref])
            .map_err(|e| ConfigError::new("v_ref", None, e.to_string()))?;
        let setpoint =
            Setpoint::new(&plant, reference).map_err(|e| ConfigError::new("v_ref", None, e.to_string()))?;
        let x0 = Vector::from_slice(&[self.v0, self.w0]).map_err(|e| ConfigError::new("v0", None, e.to_string()))?;
        let scenario = Scenario64::new(plant, gain, setpoint, self.controller, x0, self.dt, self.horizon)
            .with_saturation(self.e_max);
        scenario
            .validate()
            .map_err(|e| ConfigError::new("dt", None, e.to_string()))?;
        Ok(scenario)
    }
}
