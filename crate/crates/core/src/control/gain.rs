use crate::error::{invalid, mismatch};
use crate::{
    is_hurwitz, mat_exp, solve, solve_matrix, zoh_discretize, Error, LtiPlant, Matrix, Real, Result,
    Vector,
};

/// State-feedback gain `K` (inputs × states) for a specific plant.
#[derive(Debug, Clone, PartialEq)]
pub struct Gain<T> {
    k: Matrix<T>,
}

impl<T: Real> Gain<T> {
    /// Accepts `k` only if `A + B K` is Hurwitz for `plant`.
    pub fn new(plant: &LtiPlant<T>, k: Matrix<T>) -> Result<Self> {
        check_shape(plant, &k)?;
        let closed = plant.a() + &(plant.b() * &k);
        if !is_hurwitz(&closed)? {
            return Err(invalid!("A + B K is not Hurwitz for the supplied gain"));
        }
        Ok(Self { k })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.k
    }

    /// `A + B K`.
    pub fn closed_loop(&self, plant: &LtiPlant<T>) -> Matrix<T> {
        plant.a() + &(plant.b() * &self.k)
    }

    /// Gain for a controller that holds its output over each period `dt`,
    /// chosen so that the sampled closed loop `Ad + Bd K_s` equals
    /// `e^{(A + B K) dt}`: the held-input plant then matches the continuous
    /// loop at every sample instant. Requires a square invertible `Bd`.
    pub fn zoh_matched(&self, plant: &LtiPlant<T>, dt: T) -> Result<Self> {
        let (ad, bd) = zoh_discretize(plant.a(), plant.b(), dt)?;
        if !bd.is_square() {
            return Err(Error::UnsupportedStructure(
                "sample-matched gain needs as many inputs as states".into(),
            ));
        }
        let target = mat_exp(&self.closed_loop(plant), dt)?;
        let k = solve_matrix(&bd, &(&target - &ad))?;
        Ok(Self { k })
    }

    /// `K · x`.
    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.k.try_mul_vec(x)
    }
}

fn check_shape<T: Real>(plant: &LtiPlant<T>, k: &Matrix<T>) -> Result<()> {
    if k.rows() != plant.input_dim() || k.cols() != plant.state_dim() {
        return Err(mismatch!(
            "gain must be {}x{}, got {}x{}",
            plant.input_dim(),
            plant.state_dim(),
            k.rows(),
            k.cols()
        ));
    }
    Ok(())
}

/// Per-channel pole placement for a decoupled plant: `kᵢ = (λᵢ − aᵢᵢ) / bᵢᵢ`.
pub fn design_gain<T: Real>(plant: &LtiPlant<T>, poles: &[T]) -> Result<Gain<T>> {
    let (a, b) = (plant.a(), plant.b());
    if !a.is_diagonal() || !b.is_diagonal() {
        return Err(Error::UnsupportedStructure(
            "per-channel pole placement needs diagonal A and B; supply K directly".into(),
        ));
    }
    if poles.len() != plant.state_dim() {
        return Err(mismatch!(
            "expected {} poles, got {}",
            plant.state_dim(),
            poles.len()
        ));
    }
    if let Some(p) = poles.iter().find(|p| !(**p < T::zero())) {
        return Err(invalid!("pole must be negative, got {p}"));
    }
    let mut gains = Vec::with_capacity(poles.len());
    for (i, &pole) in poles.iter().enumerate() {
        let bi = b[(i, i)];
        if bi == T::zero() {
            return Err(Error::UnsupportedStructure(format!("input channel {i} has zero gain")));
        }
        gains.push((pole - a[(i, i)]) / bi);
    }
    Gain::new(plant, Matrix::from_diagonal(&gains)?)
}

/// Target state with the constant input that holds it.
#[derive(Debug, Clone, PartialEq)]
pub struct Setpoint<T> {
    x_star: Vector<T>,
    u_star: Vector<T>,
}

impl<T: Real> Setpoint<T> {
    /// Computes `u* = −B⁻¹ A x*`.
    pub fn new(plant: &LtiPlant<T>, x_star: Vector<T>) -> Result<Self> {
        let u_star = equilibrium_input(plant, &x_star)?;
        Ok(Self { x_star, u_star })
    }

    pub fn origin(plant: &LtiPlant<T>) -> Self {
        Self {
            x_star: Vector::zeros(plant.state_dim()),
            u_star: Vector::zeros(plant.input_dim()),
        }
    }

    /// Checks `A x* + B u* = 0` to within `1e-10` of the term magnitudes.
    pub fn from_parts(plant: &LtiPlant<T>, x_star: Vector<T>, u_star: Vector<T>) -> Result<Self> {
        let drift = plant.a().try_mul_vec(&x_star)?;
        let push = plant.b().try_mul_vec(&u_star)?;
        let residual = (&drift + &push).norm_inf();
        let scale = T::one().max(drift.norm_inf()).max(push.norm_inf());
        if residual > T::lit(1e-10) * scale {
            return Err(invalid!("setpoint is not an equilibrium (residual {residual})"));
        }
        Ok(Self { x_star, u_star })
    }

    pub fn x_star(&self) -> &Vector<T> {
        &self.x_star
    }

    pub fn u_star(&self) -> &Vector<T> {
        &self.u_star
    }
}

/// Constant input `u*` with `A x* + B u* = 0`.
pub fn equilibrium_input<T: Real>(plant: &LtiPlant<T>, x_star: &Vector<T>) -> Result<Vector<T>> {
    let drift = plant.a().try_mul_vec(x_star)?;
    solve(plant.b(), &drift.scale(-T::one()))
}

/// Plain state feedback `u* + K (x − x*)`, blind to any input delay.
pub fn naive_control<T: Real>(gain: &Gain<T>, setpoint: &Setpoint<T>, x: &Vector<T>) -> Result<Vector<T>> {
    let offset = x.try_sub(setpoint.x_star())?;
    gain.apply(&offset)?.try_add(setpoint.u_star())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plant(a: &[f64], b: &[f64]) -> LtiPlant<f64> {
        LtiPlant::new(
            Matrix::from_diagonal(a).unwrap(),
            Matrix::from_diagonal(b).unwrap(),
            0.0,
        )
        .unwrap()
    }

    fn v(x: &[f64]) -> Vector<f64> {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn per_channel_gains() {
        let g = design_gain(&plant(&[-0.5], &[2.0]), &[-3.0]).unwrap();
        assert_eq!(g.matrix()[(0, 0)], -1.25);
        let g = design_gain(&plant(&[-1.0], &[1.0]), &[-1.0]).unwrap();
        assert_eq!(g.matrix()[(0, 0)], 0.0);
        let g = design_gain(&plant(&[-1.0, -2.0], &[2.0, 4.0]), &[-5.0, -5.0]).unwrap();
        assert_eq!(g.matrix().as_slice(), &[-2.0, 0.0, 0.0, -0.75]);
    }

    #[test]
    fn design_rejects_bad_requests() {
        let p = plant(&[-1.0, -2.0], &[2.0, 4.0]);
        assert!(matches!(design_gain(&p, &[-5.0, 1.0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(design_gain(&p, &[-5.0, 0.0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(design_gain(&p, &[-5.0]), Err(Error::DimensionMismatch(_))));
        let coupled = LtiPlant::new(
            Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap(),
            Matrix::identity(2),
            0.0,
        )
        .unwrap();
        assert!(matches!(
            design_gain(&coupled, &[-1.0, -2.0]),
            Err(Error::UnsupportedStructure(_))
        ));
    }

    #[test]
    fn gain_must_stabilize() {
        let p = plant(&[1.0], &[1.0]);
        assert!(Gain::new(&p, Matrix::from_diagonal(&[-0.5]).unwrap()).is_err());
        assert!(Gain::new(&p, Matrix::from_diagonal(&[-2.0]).unwrap()).is_ok());
        assert!(Gain::new(&p, Matrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn equilibrium_examples() {
        let p = plant(&[-1.0, -2.0], &[2.0, 4.0]);
        assert_eq!(equilibrium_input(&p, &v(&[1.0, 0.5])).unwrap(), v(&[0.5, 0.25]));
        assert_eq!(equilibrium_input(&p, &v(&[0.0, 0.0])).unwrap(), v(&[0.0, 0.0]));
        let free = plant(&[0.0, 0.0], &[2.0, 4.0]);
        assert_eq!(equilibrium_input(&free, &v(&[3.0, -1.0])).unwrap().norm_inf(), 0.0);
        let sp = Setpoint::new(&p, v(&[1.0, 0.5])).unwrap();
        assert!(Setpoint::from_parts(&p, sp.x_star().clone(), sp.u_star().clone()).is_ok());
        assert!(Setpoint::from_parts(&p, v(&[1.0, 0.5]), v(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn naive_feedback() {
        let p = plant(&[-1.0, -2.0], &[2.0, 4.0]);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let sp = Setpoint::new(&p, v(&[1.0, 0.5])).unwrap();
        assert_eq!(naive_control(&g, &sp, sp.x_star()).unwrap(), *sp.u_star());
        let u = naive_control(&g, &sp, &v(&[2.0, 0.5])).unwrap();
        assert_eq!(&u - sp.u_star(), v(&[-2.0, 0.0]));
        let open = Gain { k: Matrix::zeros(2, 2) };
        assert_eq!(naive_control(&open, &sp, &v(&[7.0, -3.0])).unwrap(), *sp.u_star());
    }

    #[test]
    fn matched_gain_reproduces_continuous_loop() {
        let p = plant(&[-1.0, -2.0], &[2.0, 4.0]);
        let g = design_gain(&p, &[-5.0, -5.0]).unwrap();
        let dt = 0.01;
        let gs = g.zoh_matched(&p, dt).unwrap();
        let (ad, bd) = zoh_discretize(p.a(), p.b(), dt).unwrap();
        let sampled = &ad + &(&bd * gs.matrix());
        let target = mat_exp(&g.closed_loop(&p), dt).unwrap();
        assert!((&sampled - &target).max_abs() < 1e-14);
        // converges to the continuous gain as dt shrinks
        let fine = g.zoh_matched(&p, 1e-6).unwrap();
        assert!((fine.matrix() - g.matrix()).max_abs() < 1e-4);
    }
}
