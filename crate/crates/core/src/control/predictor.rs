use crate::control::delay_line::delay_steps;
use crate::error::mismatch;
use crate::{mat_exp, zoh_discretize, DelayLine, Error, LtiPlant, Matrix, Real, Result, Vector};

/// Precomputed kernel of the variation-of-constants forecast
///
/// `x̂(t+h) = e^{Ah} x(t) + ∫_{t−h}^{t} e^{A(t−θ)} B u(θ) dθ`
///
/// for piecewise-constant `u`. The integral collapses to
/// `Σᵢ Ad^{N−1−i} Bd uᵢ` with `(Ad, Bd)` the one-period discretization.
#[derive(Debug, Clone)]
pub struct Predictor<T> {
    dt: T,
    free_response: Matrix<T>,
    weights: Vec<Matrix<T>>,
}

impl<T: Real> Predictor<T> {
    pub fn new(plant: &LtiPlant<T>, dt: T) -> Result<Self> {
        let depth = delay_steps(plant.delay(), dt)?;
        let (ad, bd) = zoh_discretize(plant.a(), plant.b(), dt)?;
        let free_response = mat_exp(plant.a(), T::lit(depth as f64) * dt)?;
        let mut weights = Vec::with_capacity(depth);
        if depth > 0 {
            weights.push(bd);
            for _ in 1..depth {
                let next = &ad * weights.last().unwrap();
                weights.push(next);
            }
            weights.reverse();
        }
        Ok(Self {
            dt,
            free_response,
            weights,
        })
    }

    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// `e^{Ah}`.
    pub fn free_response(&self) -> &Matrix<T> {
        &self.free_response
    }

    /// Forecast from `x` and the held controls over `[t−h, t)`, oldest first.
    pub fn predict<'a, I>(&self, x: &Vector<T>, window: I) -> Result<Vector<T>>
    where
        I: IntoIterator<Item = &'a Vector<T>>,
    {
        if x.len() != self.free_response.rows() {
            return Err(mismatch!(
                "state of length {} for a {}-state plant",
                x.len(),
                self.free_response.rows()
            ));
        }
        let mut forecast = self.free_response.try_mul_vec(x)?;
        let mut used = 0;
        for (weight, u) in self.weights.iter().zip(window) {
            forecast = forecast.try_add(&weight.try_mul_vec(u)?)?;
            used += 1;
        }
        if used != self.depth() {
            return Err(Error::InsufficientHistory(format!(
                "window holds {used} of {} required samples",
                self.depth()
            )));
        }
        Ok(forecast)
    }
}

/// State expected `h` seconds ahead, given the controls already in flight.
pub fn predict_state<T: Real>(plant: &LtiPlant<T>, x: &Vector<T>, line: &DelayLine<T>) -> Result<Vector<T>> {
    let predictor = Predictor::new(plant, line.dt())?;
    if predictor.depth() != line.depth() {
        return Err(Error::InsufficientHistory(format!(
            "delay line spans {} samples, plant delay needs {}",
            line.depth(),
            predictor.depth()
        )));
    }
    predictor.predict(x, line.window())
}
