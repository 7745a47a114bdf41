//! Two-wheel differential-drive robot: physical parameters, reduction to a
//! decoupled LTI plant, wheel-force split and planar pose kinematics.
//!
//! Speed dynamics per channel are `m v̇ = F − B_v v` and `J ω̇ = T − B_ω ω`
//! with `F = k_m e_m` and `T = k_d e_d`, so the state matrix is
//! `diag(−B_v/m, −B_ω/J)` and the input matrix `diag(k_m/m, k_d/J)`.

use crate::error::{invalid, mismatch};
use crate::{Matrix, Real, Result, Vector};

/// Physical constants of the robot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotParams<T> {
    /// Mass (kg).
    pub mass: T,
    /// Moment of inertia about the vertical axis (kg·m²).
    pub inertia: T,
    /// Translational friction (N·s/m).
    pub friction_v: T,
    /// Rotational friction (N·m·s/rad).
    pub friction_w: T,
    /// Wheel separation (m).
    pub wheel_base: T,
    /// Net force per volt of mean motor voltage (N/V).
    pub gain_force: T,
    /// Torque per volt of differential motor voltage (N·m/V).
    pub gain_torque: T,
}

impl<T: Real> RobotParams<T> {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("mass", self.mass),
            ("inertia", self.inertia),
            ("friction_v", self.friction_v),
            ("friction_w", self.friction_w),
            ("wheel_base", self.wheel_base),
            ("gain_force", self.gain_force),
            ("gain_torque", self.gain_torque),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, x)| !x.is_finite()) {
            return Err(invalid!("{name} must be finite"));
        }
        for (name, value) in [("mass", self.mass), ("inertia", self.inertia), ("wheel_base", self.wheel_base)] {
            if !(value > T::zero()) {
                return Err(invalid!("{name} must be positive, got {value}"));
            }
        }
        for (name, value) in [("friction_v", self.friction_v), ("friction_w", self.friction_w)] {
            if value < T::zero() {
                return Err(invalid!("{name} must be non-negative, got {value}"));
            }
        }
        for (name, value) in [("gain_force", self.gain_force), ("gain_torque", self.gain_torque)] {
            if value == T::zero() {
                return Err(invalid!("{name} must be non-zero"));
            }
        }
        Ok(())
    }
}

/// Linear plant `ẋ(t) = A x(t) + B u(t − h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LtiPlant<T> {
    a: Matrix<T>,
    b: Matrix<T>,
    delay: T,
}

impl<T: Real> LtiPlant<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>, delay: T) -> Result<Self> {
        if !a.is_square() {
            return Err(mismatch!("state matrix must be square, got {}x{}", a.rows(), a.cols()));
        }
        if b.rows() != a.rows() {
            return Err(mismatch!(
                "input matrix has {} rows for state dimension {}",
                b.rows(),
                a.rows()
            ));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(invalid!("plant matrices must be finite"));
        }
        if !(delay >= T::zero()) || !delay.is_finite() {
            return Err(invalid!("delay must be finite and non-negative, got {delay}"));
        }
        Ok(Self { a, b, delay })
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    /// Input delay `h` (s).
    pub fn delay(&self) -> T {
        self.delay
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    /// Same matrices, different delay.
    pub fn with_delay(&self, delay: T) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), delay)
    }
}

/// Reduces the robot to its speed-channel LTI plant with input delay `delay`.
pub fn params_to_lti<T: Real>(p: &RobotParams<T>, delay: T) -> Result<LtiPlant<T>> {
    p.validate()?;
    let a = Matrix::from_diagonal(&[-p.friction_v / p.mass, -p.friction_w / p.inertia])?;
    let b = Matrix::from_diagonal(&[p.gain_force / p.mass, p.gain_torque / p.inertia])?;
    LtiPlant::new(a, b, delay)
}

/// Speed state `(v, ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState<T> {
    pub v: T,
    pub omega: T,
}

impl<T: Real> RobotState<T> {
    pub fn to_vector(self) -> Result<Vector<T>> {
        Vector::from_slice(&[self.v, self.omega])
    }
}

/// Motor command: mean voltage `e_m` and differential voltage `e_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotControl<T> {
    pub e_m: T,
    pub e_d: T,
}

impl<T: Real> RobotControl<T> {
    pub fn to_vector(self) -> Result<Vector<T>> {
        Vector::from_slice(&[self.e_m, self.e_d])
    }

    pub fn saturate(self, e_max: T) -> Self {
        Self {
            e_m: self.e_m.max(-e_max).min(e_max),
            e_d: self.e_d.max(-e_max).min(e_max),
        }
    }
}

/// Net force and torque together with their split between the two wheels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelForces<T> {
    pub force: T,
    pub torque: T,
    pub right: T,
    pub left: T,
}

/// Forces produced by a motor command.
pub fn actuator_forces<T: Real>(p: &RobotParams<T>, u: RobotControl<T>) -> WheelForces<T> {
    let force = p.gain_force * u.e_m;
    let torque = p.gain_torque * u.e_d;
    let half = T::lit(0.5);
    let lever = torque / p.wheel_base;
    WheelForces {
        force,
        torque,
        right: (force + lever) * half,
        left: (force - lever) * half,
    }
}

/// Planar pose. Heading is reported wrapped to `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pose<T> {
    pub x: T,
    pub y: T,
    pub heading: T,
}

impl<T: Real> Pose<T> {
    pub fn wrapped(self) -> Self {
        Self {
            heading: wrap_angle(self.heading),
            ..self
        }
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle<T: Real>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a <= -T::PI() {
        a = a + two_pi;
    } else if a > T::PI() {
        a = a - two_pi;
    }
    a
}

/// One RK4 step of unicycle kinematics with `v` and `ω` held over `dt`.
pub fn integrate_pose<T: Real>(pose: Pose<T>, v: T, omega: T, dt: T) -> Result<Pose<T>> {
    if !(dt > T::zero()) {
        return Err(invalid!("pose step must be positive, got {dt}"));
    }
    let deriv = |heading: T| (v * heading.cos(), v * heading.sin());
    let half = dt * T::lit(0.5);
    let (k1x, k1y) = deriv(pose.heading);
    let (k2x, k2y) = deriv(pose.heading + omega * half);
    let (k3x, k3y) = (k2x, k2y);
    let (k4x, k4y) = deriv(pose.heading + omega * dt);
    let sixth = dt / T::lit(6.0);
    let two = T::lit(2.0);
    Ok(Pose {
        x: pose.x + sixth * (k1x + two * k2x + two * k3x + k4x),
        y: pose.y + sixth * (k1y + two * k2y + two * k3y + k4y),
        heading: pose.heading + omega * dt,
    })
}
