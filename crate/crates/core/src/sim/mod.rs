//! Fixed-step closed-loop simulation of the delayed plant.

mod metrics;
mod scenario;
mod sweep;
mod trajectory;

pub use metrics::{compute_metrics, Metrics, SETTLING_BAND};
pub use scenario::{Controller, GainRealization, PlantStepper, Scenario, DEFAULT_DIVERGENCE_THRESHOLD};
pub use sweep::{sweep_delay, SweepRow};
pub use trajectory::{Sample, Termination, Trajectory};

use crate::{
    integrate_pose, naive_control, regulator_prediction, regulator_step, zoh_discretize, DelayLine,
    LtiPlant, Matrix, Pose, Real, RegulatorState, Result, Vector,
};

/// One exact held-input step: `x⁺ = Ad x + Bd u`.
pub fn step_plant<T: Real>(plant: &LtiPlant<T>, x: &Vector<T>, u_delayed: &Vector<T>, dt: T) -> Result<Vector<T>> {
    let (ad, bd) = zoh_discretize(plant.a(), plant.b(), dt)?;
    ad.try_mul_vec(x)?.try_add(&bd.try_mul_vec(u_delayed)?)
}

/// One classical Runge–Kutta step of `ẋ = A x + B u` with `u` held.
pub fn step_plant_rk4<T: Real>(plant: &LtiPlant<T>, x: &Vector<T>, u: &Vector<T>, dt: T) -> Result<Vector<T>> {
    let forcing = plant.b().try_mul_vec(u)?;
    let f = |state: &Vector<T>| -> Result<Vector<T>> { plant.a().try_mul_vec(state)?.try_add(&forcing) };
    let half = dt * T::lit(0.5);
    let k1 = f(x)?;
    let k2 = f(&x.try_add(&k1.scale(half))?)?;
    let k3 = f(&x.try_add(&k2.scale(half))?)?;
    let k4 = f(&x.try_add(&k3.scale(dt))?)?;
    let two = T::lit(2.0);
    let slope = k1
        .try_add(&k2.scale(two))?
        .try_add(&k3.scale(two))?
        .try_add(&k4)?;
    x.try_add(&slope.scale(dt / T::lit(6.0)))
}

struct Propagator<T> {
    stepper: PlantStepper,
    ad: Matrix<T>,
    bd: Matrix<T>,
}

impl<T: Real> Propagator<T> {
    fn new(plant: &LtiPlant<T>, dt: T, stepper: PlantStepper) -> Result<Self> {
        let (ad, bd) = zoh_discretize(plant.a(), plant.b(), dt)?;
        Ok(Self { stepper, ad, bd })
    }

    fn step(&self, plant: &LtiPlant<T>, x: &Vector<T>, u: &Vector<T>, dt: T) -> Result<Vector<T>> {
        match self.stepper {
            PlantStepper::ExactZoh => self.ad.try_mul_vec(x)?.try_add(&self.bd.try_mul_vec(u)?),
            PlantStepper::Rk4 => step_plant_rk4(plant, x, u, dt),
        }
    }
}

/// Runs the scenario to its horizon or until the state leaves the
/// divergence bound.
///
/// Per sample: read `x(t)`, compute `u(t)`, push it into the delay line, let
/// the plant consume the control issued at `t − h` (the `nodelay` controller
/// consumes `u(t)` itself), step the plant and the pose, record.
pub fn run<T: Real>(scenario: &Scenario<T>) -> Result<(Trajectory<T>, Metrics<T>)> {
    scenario.validate()?;
    let plant = &scenario.plant;
    let setpoint = &scenario.setpoint;
    let dt = scenario.dt;
    let steps = scenario.steps();
    let depth = scenario.delay_steps()?;
    let gain = scenario.applied_gain()?;
    let propagator = Propagator::new(plant, dt, scenario.stepper)?;

    let mut line = DelayLine::with_depth(depth, dt, setpoint.u_star().clone())?;
    let mut regulator = match scenario.controller.regulator_mode() {
        Some(mode) => Some(RegulatorState::new(mode, plant, dt)?),
        None => None,
    };

    let mut samples = Vec::with_capacity(steps + 1);
    let mut termination = Termination::Completed;
    let mut x = scenario.x0.clone();
    let mut pose = Pose::default();

    for k in 0..=steps {
        let t = T::lit(k as f64) * dt;
        if !x.is_finite() || x.norm_inf() > scenario.divergence_threshold {
            termination = Termination::Diverged { at: t };
            break;
        }

        let prediction = match &regulator {
            Some(reg) => Some(regulator_prediction(plant, setpoint, &x, reg, &line)?),
            None => None,
        };
        let feedback_state = prediction.as_ref().unwrap_or(&x);
        let mut u = naive_control(&gain, setpoint, feedback_state)?;
        if let Some(bound) = scenario.e_max {
            u = u.clamp_abs(bound);
        }

        samples.push(Sample {
            t,
            state: x.clone(),
            control: u.clone(),
            prediction,
            pose: pose.wrapped(),
        });
        if k == steps {
            break;
        }

        if let Some(reg) = regulator.as_mut() {
            regulator_step(plant, setpoint, reg, &u, dt)?;
        }
        let acting = match scenario.controller {
            Controller::NoDelay => u,
            _ => line.push(u),
        };
        let next = propagator.step(plant, &x, &acting, dt)?;
        let omega = x.as_slice().get(1).copied().unwrap_or_else(T::zero);
        pose = integrate_pose(pose, x[0], omega, dt)?;
        x = next;
    }

    let trajectory = Trajectory::new(dt, depth, samples, termination);
    let metrics = compute_metrics(&trajectory, setpoint, &scenario.x0);
    Ok((trajectory, metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{design_gain, mat_exp, Gain, Setpoint};

    fn robot_plant(h: f64) -> LtiPlant<f64> {
        LtiPlant::new(
            Matrix::from_diagonal(&[-1.0, -2.0]).unwrap(),
            Matrix::from_diagonal(&[2.0, 4.0]).unwrap(),
            h,
        )
        .unwrap()
    }

    fn v(x: &[f64]) -> Vector<f64> {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn plant_step_examples() {
        let p = robot_plant(0.0);
        let x = step_plant(&p, &v(&[1.0, 1.0]), &v(&[0.0, 0.0]), 0.5).unwrap();
        assert!((x[0] - 0.6065306597).abs() < 1e-10);
        assert!((x[1] - 0.3678794412).abs() < 1e-10);

        let sp = Setpoint::new(&p, v(&[1.0, 0.5])).unwrap();
        let x = step_plant(&p, sp.x_star(), sp.u_star(), 0.5).unwrap();
        assert!((&x - sp.x_star()).norm_inf() < 1e-15);

        let integrator = LtiPlant::new(Matrix::zeros(2, 2), Matrix::identity(2), 0.0).unwrap();
        let x = step_plant(&integrator, &v(&[0.0, 0.0]), &v(&[1.0, 2.0]), 0.1).unwrap();
        assert!((&x - &v(&[0.1, 0.2])).norm_inf() < 1e-16);
    }

    #[test]
    fn equilibrium_start_stays_put() {
        let p = robot_plant(0.3);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let sp = Setpoint::new(&p, v(&[1.0, 0.5])).unwrap();
        for c in Controller::ALL {
            let s = Scenario::new(p.clone(), g.clone(), sp.clone(), c, sp.x_star().clone(), 0.01, 1.0);
            let (traj, m) = run(&s).unwrap();
            assert!(m.settled, "{c}");
            assert_eq!(m.settling_time, Some(0.0));
            assert!(m.max_excursion < 1e-14, "{c}");
            assert_eq!(traj.samples().len(), 101);
        }
    }

    #[test]
    fn nodelay_matches_closed_loop_exponential() {
        let p = robot_plant(0.3);
        let g = design_gain(&p, &[-5.0, -3.0]).unwrap();
        let sp = Setpoint::origin(&p);
        let x0 = v(&[1.0, -2.0]);
        let s = Scenario::new(p.clone(), g.clone(), sp, Controller::NoDelay, x0.clone(), 0.01, 2.0);
        let (traj, _) = run(&s).unwrap();
        let closed = g.closed_loop(&p);
        for sample in traj.samples() {
            let exact = mat_exp(&closed, sample.t).unwrap().try_mul_vec(&x0).unwrap();
            assert!((&exact - &sample.state).norm_inf() < 1e-10, "t = {}", sample.t);
        }
    }

    #[test]
    fn direct_realization_uses_designed_gain() {
        let p = robot_plant(0.0);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let sp = Setpoint::origin(&p);
        let s = Scenario::new(p, g, sp, Controller::Naive, v(&[1.0, 0.0]), 0.01, 0.1)
            .with_realization(GainRealization::Direct);
        let (traj, _) = run(&s).unwrap();
        assert_eq!(traj.samples()[0].control, v(&[-2.0, 0.0]));
    }

    #[test]
    fn saturation_bounds_controls() {
        let p = robot_plant(0.3);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let sp = Setpoint::new(&p, v(&[1.0, 0.5])).unwrap();
        let s = Scenario::new(p, g, sp, Controller::PredictorWindow, v(&[0.0, 0.0]), 0.01, 3.0)
            .with_saturation(Some(1.0));
        let (traj, m) = run(&s).unwrap();
        assert!(traj.samples().iter().all(|s| s.control.norm_inf() <= 1.0));
        assert!(m.settled);
    }

    #[test]
    fn invalid_scenarios_rejected() {
        let p = robot_plant(0.25);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let sp = Setpoint::origin(&p);
        let s = Scenario::new(p.clone(), g.clone(), sp.clone(), Controller::Naive, v(&[0.0, 0.0]), 0.1, 1.0);
        assert!(run(&s).is_err());
        let s = Scenario::new(p.clone(), g.clone(), sp.clone(), Controller::Naive, v(&[0.0]), 0.05, 1.0);
        assert!(run(&s).is_err());
        let s = Scenario::new(p, g, sp, Controller::Naive, v(&[0.0, 0.0]), 0.05, 0.01);
        assert!(run(&s).is_err());
    }

    #[test]
    fn matched_gain_needs_square_input() {
        let p = LtiPlant::new(
            Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap(),
            Matrix::from_rows(&[[0.0], [1.0]]).unwrap(),
            0.1,
        )
        .unwrap();
        let g = Gain::new(&p, Matrix::from_rows(&[[-2.0, -3.0]]).unwrap()).unwrap();
        let sp = Setpoint::origin(&p);
        let s = Scenario::new(p, g, sp, Controller::PredictorWindow, v(&[1.0, 0.0]), 0.01, 5.0);
        assert!(run(&s).is_err());
        let (_, m) = run(&s.with_realization(GainRealization::Direct)).unwrap();
        assert!(m.settled);
        assert!(m.max_prediction_error.unwrap() < 1e-12);
    }
}
