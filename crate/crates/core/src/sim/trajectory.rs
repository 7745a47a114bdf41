use crate::{Pose, Real, Vector};

/// One controller period.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    pub state: Vector<T>,
    /// Control issued at `t`.
    pub control: Vector<T>,
    /// Forecast of the state at `t + h`, for predictor controllers.
    pub prediction: Option<Vector<T>>,
    pub pose: Pose<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination<T> {
    Completed,
    Diverged { at: T },
}

/// Uniformly sampled closed-loop record.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    dt: T,
    delay_steps: usize,
    samples: Vec<Sample<T>>,
    termination: Termination<T>,
}

impl<T: Real> Trajectory<T> {
    pub fn new(dt: T, delay_steps: usize, samples: Vec<Sample<T>>, termination: Termination<T>) -> Self {
        Self {
            dt,
            delay_steps,
            samples,
            termination,
        }
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn delay_steps(&self) -> usize {
        self.delay_steps
    }

    pub fn samples(&self) -> &[Sample<T>] {
        &self.samples
    }

    pub fn termination(&self) -> Termination<T> {
        self.termination
    }

    pub fn diverged(&self) -> bool {
        matches!(self.termination, Termination::Diverged { .. })
    }

    pub fn last(&self) -> Option<&Sample<T>> {
        self.samples.last()
    }

    /// `(issue time, forecast, realized state)` for each forecast whose target
    /// time lies inside the record.
    pub fn prediction_pairs(&self) -> impl Iterator<Item = (T, &Vector<T>, &Vector<T>)> + '_ {
        let lag = self.delay_steps;
        self.samples
            .iter()
            .zip(self.samples.iter().skip(lag))
            .filter_map(|(issued, realized)| {
                issued
                    .prediction
                    .as_ref()
                    .map(|p| (issued.t, p, &realized.state))
            })
    }
}
