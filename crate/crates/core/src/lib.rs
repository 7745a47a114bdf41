//! Predictor-feedback compensation of a constant input delay for linear
//! plants, with a differential-drive robot as the worked example.
//!
//! A plant `ẋ(t) = A x(t) + B u(t − h)` driven by plain state feedback
//! `u = K x` loses performance, and eventually stability, as `h` grows. The
//! regulator in [`control`] instead feeds back the forecast `x̂(t+h)`
//! obtained from the variation-of-constants formula and the controls already
//! in flight, which makes the delayed closed loop a time-shifted copy of the
//! undelayed one.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`.
//!
//! ```
//! use delaycomp::{design_gain, params_to_lti, run, Controller, RobotParams, Scenario, Setpoint, Vector};
//!
//! let robot = RobotParams {
//!     mass: 1.0,
//!     inertia: 1.0,
//!     friction_v: 1.0,
//!     friction_w: 2.0,
//!     wheel_base: 0.5,
//!     gain_force: 2.0,
//!     gain_torque: 4.0,
//! };
//! let plant = params_to_lti(&robot, 0.3).unwrap();
//! let gain = design_gain(&plant, &[-5.0, -5.0]).unwrap();
//! let setpoint = Setpoint::new(&plant, Vector::from_slice(&[1.0, 0.5]).unwrap()).unwrap();
//! let x0 = Vector::from_slice(&[0.0, 0.0]).unwrap();
//! let scenario = Scenario::new(plant, gain, setpoint, Controller::PredictorWindow, x0, 0.01, 5.0);
//! let (_, metrics) = run(&scenario).unwrap();
//! assert!(metrics.settled);
//! ```

mod error;
mod scalar;

pub mod control;
pub mod robot;
pub mod sim;
pub mod smallmat;

pub use control::{
    delay_steps, design_gain, equilibrium_input, naive_control, predict_state, regulator_control,
    regulator_prediction, regulator_step, DelayLine, Gain, Predictor, RegulatorMode,
    RegulatorState, Setpoint,
};
pub use error::{Error, Result};
pub use robot::{
    actuator_forces, integrate_pose, params_to_lti, wrap_angle, LtiPlant, Pose, RobotControl,
    RobotParams, RobotState, WheelForces,
};
pub use scalar::Real;
pub use sim::{
    compute_metrics, run, step_plant, step_plant_rk4, sweep_delay, Controller, GainRealization,
    Metrics, PlantStepper, Sample, Scenario, SweepRow, Termination, Trajectory,
};
pub use smallmat::{
    characteristic_polynomial, is_hurwitz, mat_exp, solve, solve_matrix, zoh_discretize, Matrix,
    Vector,
};

pub type Matrix64 = Matrix<f64>;
pub type Vector64 = Vector<f64>;
pub type LtiPlant64 = LtiPlant<f64>;
pub type RobotParams64 = RobotParams<f64>;
pub type Gain64 = Gain<f64>;
pub type Setpoint64 = Setpoint<f64>;
pub type DelayLine64 = DelayLine<f64>;
pub type Scenario64 = Scenario<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type Metrics64 = Metrics<f64>;

pub type Matrix32 = Matrix<f32>;
pub type Vector32 = Vector<f32>;
