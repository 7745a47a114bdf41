use crate::{Real, Setpoint, Trajectory, Vector};

/// Fraction of the initial offset that defines the settling band.
pub const SETTLING_BAND: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics<T> {
    pub settled: bool,
    /// First time after which `‖x − x*‖∞` stays within the band until the horizon.
    pub settling_time: Option<T>,
    /// Largest `‖x − x*‖∞` over the record.
    pub max_excursion: T,
    /// Largest `‖x̂(t+h) − x(t+h)‖∞`; only for predictor runs.
    pub max_prediction_error: Option<T>,
    pub diverged: bool,
}

pub fn compute_metrics<T: Real>(traj: &Trajectory<T>, setpoint: &Setpoint<T>, x0: &Vector<T>) -> Metrics<T> {
    let x_star = setpoint.x_star();
    let errors: Vec<T> = traj
        .samples()
        .iter()
        .map(|s| (&s.state - x_star).norm_inf())
        .collect();
    let max_excursion = errors.iter().copied().fold(T::zero(), T::max);
    let diverged = traj.diverged();

    let has_predictions = traj.samples().iter().any(|s| s.prediction.is_some());
    let max_prediction_error = has_predictions.then(|| {
        traj.prediction_pairs()
            .map(|(_, predicted, realized)| (predicted - realized).norm_inf())
            .fold(T::zero(), T::max)
    });

    let initial_offset = (x0 - x_star).norm_inf();
    let (settled, settling_time) = if diverged || errors.is_empty() {
        (false, None)
    } else if initial_offset == T::zero() {
        (true, Some(T::zero()))
    } else {
        let band = T::lit(SETTLING_BAND) * initial_offset;
        match errors.iter().rposition(|&e| e > band) {
            None => (true, Some(traj.samples()[0].t)),
            Some(last) if last + 1 < errors.len() => (true, Some(traj.samples()[last + 1].t)),
            Some(_) => (false, None),
        }
    };

    Metrics {
        settled,
        settling_time,
        max_excursion,
        max_prediction_error,
        diverged,
    }
}
