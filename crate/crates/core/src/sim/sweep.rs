use rayon::prelude::*;

use crate::{run, Controller, Metrics, Real, Result, Scenario};

/// Naive and predictor metrics at one delay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub delay: T,
    pub naive: Metrics<T>,
    pub predictor: Metrics<T>,
}

/// Runs the naive controller and a predictor on `base` at every delay in
/// `delays`. The predictor is `base.controller` if that is a predictor,
/// otherwise the window form. Rows come back in input order.
pub fn sweep_delay<T: Real>(base: &Scenario<T>, delays: &[T]) -> Result<Vec<SweepRow<T>>> {
    let predictor = if base.controller.is_predictor() {
        base.controller
    } else {
        Controller::PredictorWindow
    };
    delays
        .par_iter()
        .map(|&delay| {
            let mut scenario = base.clone();
            scenario.plant = base.plant.with_delay(delay)?;
            let (_, naive) = run(&scenario.clone().with_controller(Controller::Naive))?;
            let (_, predicted) = run(&scenario.with_controller(predictor))?;
            Ok(SweepRow {
                delay,
                naive,
                predictor: predicted,
            })
        })
        .collect()
}
