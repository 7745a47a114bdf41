//! Predictor-feedback regulator `u(t) = u* + K (x̂(t+h) − x*)`.
//!
//! Two realizations of the forecast are provided:
//!
//! * [`RegulatorMode::Window`] evaluates the sliding integral over the
//!   delay-line contents with the kernel `e^{A(t−θ)}`, whose argument never
//!   exceeds `h`.
//! * [`RegulatorMode::ZForm`] carries the running integral
//!   `z(t) = ∫₀ᵗ e^{−Aθ} B ũ(θ) dθ` and forms `e^{At} [z(t) − z(t−h)]`.
//!   The split factors `e^{±At}` grow without bound for non-neutral `A`, so
//!   this mode is only well conditioned over short horizons.
//!
//! Both work on the shifted input `ũ = u − u*`, so the history before `t = 0`
//! (prefilled with `u*`) contributes nothing and `z ≡ 0` on `[−h, 0]`.

use std::collections::VecDeque;

use crate::control::delay_line::delay_steps;
use crate::error::mismatch;
use crate::{
    mat_exp, zoh_discretize, DelayLine, Error, Gain, LtiPlant, Matrix, Predictor, Real, Result,
    Setpoint, Vector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegulatorMode {
    ZForm,
    Window,
}

/// Dynamic state of the regulator for one simulation.
#[derive(Debug, Clone)]
pub struct RegulatorState<T> {
    mode: RegulatorMode,
    dt: T,
    ticks: u64,
    z: Vector<T>,
    z_history: VecDeque<Vector<T>>,
    predictor: Predictor<T>,
    // ∫₀^dt e^{−As} ds · B
    z_input: Matrix<T>,
}

impl<T: Real> RegulatorState<T> {
    pub fn new(mode: RegulatorMode, plant: &LtiPlant<T>, dt: T) -> Result<Self> {
        let depth = delay_steps(plant.delay(), dt)?;
        let n = plant.state_dim();
        let neg_a = -plant.a();
        let (_, z_input) = zoh_discretize(&neg_a, plant.b(), dt)?;
        Ok(Self {
            mode,
            dt,
            ticks: 0,
            z: Vector::zeros(n),
            z_history: std::iter::repeat(Vector::zeros(n)).take(depth).collect(),
            predictor: Predictor::new(plant, dt)?,
            z_input,
        })
    }

    pub fn mode(&self) -> RegulatorMode {
        self.mode
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    pub fn time(&self) -> T {
        T::lit(self.ticks as f64) * self.dt
    }

    /// `z(t)`.
    pub fn z(&self) -> &Vector<T> {
        &self.z
    }

    /// `z(t − h)`.
    pub fn z_delayed(&self) -> &Vector<T> {
        self.z_history.front().unwrap_or(&self.z)
    }

    pub fn z_history(&self) -> impl ExactSizeIterator<Item = &Vector<T>> + '_ {
        self.z_history.iter()
    }
}

fn check_dims<T: Real>(plant: &LtiPlant<T>, reg: &RegulatorState<T>) -> Result<()> {
    if reg.z.len() != plant.state_dim() {
        return Err(mismatch!(
            "regulator built for {} states, plant has {}",
            reg.z.len(),
            plant.state_dim()
        ));
    }
    Ok(())
}

/// Forecast `x̂(t+h)` used by [`regulator_control`], in absolute coordinates.
pub fn regulator_prediction<T: Real>(
    plant: &LtiPlant<T>,
    setpoint: &Setpoint<T>,
    x: &Vector<T>,
    reg: &RegulatorState<T>,
    line: &DelayLine<T>,
) -> Result<Vector<T>> {
    check_dims(plant, reg)?;
    if reg.ticks != line.ticks() {
        return Err(Error::State(format!(
            "regulator at sample {} but delay line at sample {}",
            reg.ticks,
            line.ticks()
        )));
    }
    let offset = x.try_sub(setpoint.x_star())?;
    let shifted = match reg.mode {
        RegulatorMode::Window => {
            let inputs = line
                .window()
                .map(|u| u.try_sub(setpoint.u_star()))
                .collect::<Result<Vec<_>>>()?;
            reg.predictor.predict(&offset, inputs.iter())?
        }
        RegulatorMode::ZForm => {
            let growth = mat_exp(plant.a(), reg.time())?;
            let in_flight = growth.try_mul_vec(&reg.z.try_sub(reg.z_delayed())?)?;
            reg.predictor
                .free_response()
                .try_mul_vec(&offset)?
                .try_add(&in_flight)?
        }
    };
    shifted.try_add(setpoint.x_star())
}

/// Control `u(t) = u* + K (x̂(t+h) − x*)`.
pub fn regulator_control<T: Real>(
    plant: &LtiPlant<T>,
    gain: &Gain<T>,
    setpoint: &Setpoint<T>,
    x: &Vector<T>,
    reg: &RegulatorState<T>,
    line: &DelayLine<T>,
) -> Result<Vector<T>> {
    let forecast = regulator_prediction(plant, setpoint, x, reg, line)?;
    crate::naive_control(gain, setpoint, &forecast)
}

/// Advances the regulator by one period with the control actually issued.
///
/// In z-form this integrates `ż = e^{−At} B ũ` exactly over `[t, t+dt)` and
/// shifts `z(t)` into the history. Window mode only advances the clock.
pub fn regulator_step<T: Real>(
    plant: &LtiPlant<T>,
    setpoint: &Setpoint<T>,
    reg: &mut RegulatorState<T>,
    u_applied: &Vector<T>,
    dt: T,
) -> Result<()> {
    check_dims(plant, reg)?;
    if dt != reg.dt {
        return Err(Error::State(format!(
            "step of {dt} s on a regulator sampled every {} s",
            reg.dt
        )));
    }
    if reg.mode == RegulatorMode::ZForm {
        let shifted = u_applied.try_sub(setpoint.u_star())?;
        let decay = mat_exp(plant.a(), -reg.time())?;
        let increment = decay.try_mul_vec(&reg.z_input.try_mul_vec(&shifted)?)?;
        let next = reg.z.try_add(&increment)?;
        let previous = std::mem::replace(&mut reg.z, next);
        if !reg.z_history.is_empty() {
            reg.z_history.pop_front();
            reg.z_history.push_back(previous);
        }
    }
    reg.ticks += 1;
    Ok(())
}
