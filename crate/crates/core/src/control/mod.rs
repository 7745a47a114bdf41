//! Gain design, setpoints, the input delay line, the state predictor and the
//! delay-compensating regulator.

mod delay_line;
mod gain;
mod predictor;
mod regulator;

pub use delay_line::{delay_steps, DelayLine};
pub use gain::{design_gain, equilibrium_input, naive_control, Gain, Setpoint};
pub use predictor::{predict_state, Predictor};
pub use regulator::{
    regulator_control, regulator_prediction, regulator_step, RegulatorMode, RegulatorState,
};
