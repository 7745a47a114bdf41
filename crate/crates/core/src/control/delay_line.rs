use std::collections::VecDeque;

use crate::error::invalid;
use crate::{Error, Real, Result, Vector};

fn alignment_tolerance<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(64.0))
}

/// Number of controller periods in `delay`; fails unless `delay` is an
/// integer multiple of `dt`.
pub fn delay_steps<T: Real>(delay: T, dt: T) -> Result<usize> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(invalid!("sample period must be positive and finite, got {dt}"));
    }
    if !(delay >= T::zero()) || !delay.is_finite() {
        return Err(invalid!("delay must be non-negative and finite, got {delay}"));
    }
    let ratio = delay / dt;
    let steps = ratio.round();
    if (ratio - steps).abs() > alignment_tolerance::<T>() * T::one().max(ratio) {
        return Err(invalid!(
            "delay {delay} is not an integer multiple of the sample period {dt}"
        ));
    }
    steps
        .to_usize()
        .ok_or_else(|| invalid!("delay of {steps} samples is out of range"))
}

/// Controls issued over the last `h = N·dt` seconds, each held for one period.
///
/// With current time `t`, entry `i` (oldest first) covers
/// `[t − h + i·dt, t − h + (i+1)·dt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayLine<T> {
    dt: T,
    depth: usize,
    samples: VecDeque<Vector<T>>,
    ticks: u64,
}

impl<T: Real> DelayLine<T> {
    /// Line for `delay = N·dt`, filled with `prefill` for all times before `t = 0`.
    pub fn new(delay: T, dt: T, prefill: Vector<T>) -> Result<Self> {
        let depth = delay_steps(delay, dt)?;
        Self::with_depth(depth, dt, prefill)
    }

    pub fn with_depth(depth: usize, dt: T, prefill: Vector<T>) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(invalid!("sample period must be positive and finite, got {dt}"));
        }
        Ok(Self {
            dt,
            depth,
            samples: std::iter::repeat(prefill).take(depth).collect(),
            ticks: 0,
        })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// `N`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `h = N·dt`.
    pub fn delay(&self) -> T {
        T::lit(self.depth as f64) * self.dt
    }

    /// Samples pushed so far.
    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    /// Current time `t`.
    pub fn now(&self) -> T {
        T::lit(self.ticks as f64) * self.dt
    }

    /// Records the control issued at `t`, advances to `t + dt`, and returns
    /// the control issued at `t − h`, which is the one acting on the plant
    /// over `[t, t + dt)`.
    pub fn push(&mut self, u: Vector<T>) -> Vector<T> {
        self.ticks += 1;
        if self.depth == 0 {
            return u;
        }
        self.samples.push_back(u);
        self.samples
            .pop_front()
            .expect("delay line holds depth samples")
    }

    /// Hold value at time `tau ∈ [t − h, t)`.
    pub fn lookup(&self, tau: T) -> Result<&Vector<T>> {
        let start = self.now() - self.delay();
        let offset = (tau - start) / self.dt;
        let nearest = offset.round();
        let slot = if (offset - nearest).abs() <= alignment_tolerance::<T>() * T::one().max(offset.abs()) {
            nearest
        } else {
            offset.floor()
        };
        if slot < T::zero() || slot >= T::lit(self.depth as f64) || !slot.is_finite() {
            return Err(Error::InsufficientHistory(format!(
                "time {tau} outside the stored window [{start}, {})",
                self.now()
            )));
        }
        let index = slot.to_usize().expect("slot within depth");
        Ok(&self.samples[index])
    }

    /// Stored controls, oldest first.
    pub fn window(&self) -> impl ExactSizeIterator<Item = &Vector<T>> + '_ {
        self.samples.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64) -> Vector<f64> {
        Vector::from_slice(&[x]).unwrap()
    }

    #[test]
    fn integrality() {
        assert_eq!(delay_steps(0.3, 0.01).unwrap(), 30);
        assert_eq!(delay_steps(0.0, 0.01).unwrap(), 0);
        assert_eq!(delay_steps(0.3f32, 0.01f32).unwrap(), 30);
        assert!(delay_steps(0.25, 0.1).is_err());
        assert!(delay_steps(-0.1, 0.1).is_err());
        assert!(delay_steps(0.1, 0.0).is_err());
    }

    #[test]
    fn prefilled_then_delays_by_depth() {
        let mut line = DelayLine::new(0.3, 0.1, v(-1.0)).unwrap();
        assert_eq!(line.depth(), 3);
        let out: Vec<f64> = (0..6).map(|k| line.push(v(k as f64))[0]).collect();
        assert_eq!(out, vec![-1.0, -1.0, -1.0, 0.0, 1.0, 2.0]);
        let window: Vec<f64> = line.window().map(|u| u[0]).collect();
        assert_eq!(window, vec![3.0, 4.0, 5.0]);
    }

    #[test]
    fn zero_depth_passes_through() {
        let mut line = DelayLine::new(0.0, 0.1, v(0.0)).unwrap();
        assert_eq!(line.push(v(7.0))[0], 7.0);
        assert_eq!(line.window().len(), 0);
        assert!(line.lookup(0.05).is_err());
    }

    #[test]
    fn lookup_is_right_open_piecewise_constant() {
        let mut line = DelayLine::new(0.3, 0.1, v(0.0)).unwrap();
        for k in 0..5 {
            line.push(v(10.0 + k as f64));
        }
        // t = 0.5, window [0.2, 0.5) holds controls issued at 0.2, 0.3, 0.4
        assert_eq!(line.lookup(0.2).unwrap()[0], 12.0);
        assert_eq!(line.lookup(0.29).unwrap()[0], 12.0);
        assert_eq!(line.lookup(0.1 + 0.2).unwrap()[0], 13.0);
        assert_eq!(line.lookup(0.45).unwrap()[0], 14.0);
        assert!(line.lookup(0.5).is_err());
        assert!(line.lookup(0.19).is_err());
    }
}
