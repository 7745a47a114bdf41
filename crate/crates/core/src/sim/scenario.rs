use std::fmt;
use std::str::FromStr;

use crate::control::delay_steps;
use crate::error::{invalid, mismatch};
use crate::{Error, Gain, LtiPlant, Real, RegulatorMode, Result, Setpoint, Vector};

/// Which control law drives the plant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Controller {
    /// State feedback on the plant with its delay removed.
    NoDelay,
    /// State feedback on the delayed plant, ignoring the delay.
    Naive,
    /// Predictor feedback, running-integral realization.
    PredictorZForm,
    /// Predictor feedback, sliding-window realization.
    PredictorWindow,
}

impl Controller {
    pub const ALL: [Controller; 4] = [
        Controller::NoDelay,
        Controller::Naive,
        Controller::PredictorZForm,
        Controller::PredictorWindow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Controller::NoDelay => "nodelay",
            Controller::Naive => "naive",
            Controller::PredictorZForm => "predictor-zform",
            Controller::PredictorWindow => "predictor-window",
        }
    }

    pub fn regulator_mode(self) -> Option<RegulatorMode> {
        match self {
            Controller::PredictorZForm => Some(RegulatorMode::ZForm),
            Controller::PredictorWindow => Some(RegulatorMode::Window),
            _ => None,
        }
    }

    pub fn is_predictor(self) -> bool {
        self.regulator_mode().is_some()
    }
}

impl fmt::Display for Controller {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Controller {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Controller::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                invalid!(
                    "unknown controller `{s}` (expected one of nodelay, naive, predictor-zform, predictor-window)"
                )
            })
    }
}

/// How the continuous gain is applied by a controller that holds its output
/// for one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainRealization {
    /// Hold `u* + K (·)` with the designed `K`.
    Direct,
    /// Hold `u* + K_s (·)` with `K_s` from [`Gain::zoh_matched`], so the
    /// sampled loop reproduces `e^{(A+BK)t}` exactly at sample instants.
    #[default]
    ZohMatched,
}

/// Plant propagator between samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlantStepper {
    /// Exact discretization for held input.
    #[default]
    ExactZoh,
    /// One classical Runge–Kutta step per period.
    Rk4,
}

pub const DEFAULT_DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Everything needed for one closed-loop run.
#[derive(Debug, Clone)]
pub struct Scenario<T> {
    pub plant: LtiPlant<T>,
    pub gain: Gain<T>,
    pub setpoint: Setpoint<T>,
    pub controller: Controller,
    pub x0: Vector<T>,
    /// Controller period (s).
    pub dt: T,
    /// Horizon (s).
    pub horizon: T,
    /// Bound on `‖x‖∞` beyond which the run stops as diverged.
    pub divergence_threshold: T,
    /// Optional symmetric saturation of every control channel.
    pub e_max: Option<T>,
    pub realization: GainRealization,
    pub stepper: PlantStepper,
}

impl<T: Real> Scenario<T> {
    pub fn new(
        plant: LtiPlant<T>,
        gain: Gain<T>,
        setpoint: Setpoint<T>,
        controller: Controller,
        x0: Vector<T>,
        dt: T,
        horizon: T,
    ) -> Self {
        Self {
            plant,
            gain,
            setpoint,
            controller,
            x0,
            dt,
            horizon,
            divergence_threshold: T::lit(DEFAULT_DIVERGENCE_THRESHOLD),
            e_max: None,
            realization: GainRealization::default(),
            stepper: PlantStepper::default(),
        }
    }

    pub fn with_controller(mut self, controller: Controller) -> Self {
        self.controller = controller;
        self
    }

    pub fn with_realization(mut self, realization: GainRealization) -> Self {
        self.realization = realization;
        self
    }

    pub fn with_stepper(mut self, stepper: PlantStepper) -> Self {
        self.stepper = stepper;
        self
    }

    pub fn with_saturation(mut self, e_max: Option<T>) -> Self {
        self.e_max = e_max;
        self
    }

    pub fn with_divergence_threshold(mut self, threshold: T) -> Self {
        self.divergence_threshold = threshold;
        self
    }

    /// Number of controller periods in the horizon.
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round().to_usize().unwrap_or(0)
    }

    /// Input delay in controller periods.
    pub fn delay_steps(&self) -> Result<usize> {
        delay_steps(self.plant.delay(), self.dt)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(invalid!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon >= self.dt) || !self.horizon.is_finite() {
            return Err(invalid!("horizon {} shorter than dt {}", self.horizon, self.dt));
        }
        if !(self.divergence_threshold > T::zero()) {
            return Err(invalid!("divergence threshold must be positive"));
        }
        if let Some(e) = self.e_max {
            if !(e > T::zero()) {
                return Err(invalid!("saturation bound must be positive, got {e}"));
            }
        }
        self.delay_steps()?;
        let n = self.plant.state_dim();
        let m = self.plant.input_dim();
        if self.x0.len() != n || self.setpoint.x_star().len() != n {
            return Err(mismatch!("initial state and setpoint must have {n} entries"));
        }
        if self.setpoint.u_star().len() != m {
            return Err(mismatch!("equilibrium input must have {m} entries"));
        }
        if self.gain.matrix().rows() != m || self.gain.matrix().cols() != n {
            return Err(mismatch!("gain must be {m}x{n}"));
        }
        Ok(())
    }

    /// The gain the sampled controller actually holds.
    pub fn applied_gain(&self) -> Result<Gain<T>> {
        match self.realization {
            GainRealization::Direct => Ok(self.gain.clone()),
            GainRealization::ZohMatched => self.gain.zoh_matched(&self.plant, self.dt),
        }
    }
}
