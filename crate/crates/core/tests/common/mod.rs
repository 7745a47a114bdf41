#![allow(dead_code)]

use delaycomp::{Gain, LtiPlant, Matrix, Setpoint, Vector};
use rand::Rng;

pub fn v(x: &[f64]) -> Vector<f64> {
    Vector::from_slice(x).unwrap()
}

pub fn diag(d: &[f64]) -> Matrix<f64> {
    Matrix::from_diagonal(d).unwrap()
}

pub fn robot_plant(h: f64) -> LtiPlant<f64> {
    LtiPlant::new(diag(&[-1.0, -2.0]), diag(&[2.0, 4.0]), h).unwrap()
}

/// Scalar channel `ẋ = a x + b u(t − h)` with gain `k`.
pub fn scalar_channel(a: f64, b: f64, k: f64, h: f64) -> (LtiPlant<f64>, Gain<f64>, Setpoint<f64>) {
    let plant = LtiPlant::new(diag(&[a]), diag(&[b]), h).unwrap();
    let gain = Gain::new(&plant, diag(&[k])).unwrap();
    let setpoint = Setpoint::origin(&plant);
    (plant, gain, setpoint)
}

/// Random `rows`x`cols` matrix rescaled to the given 1-norm.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, norm: f64) -> Matrix<f64> {
    let entries: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let m = Matrix::from_row_slice(rows, cols, &entries).unwrap();
    m.scale(norm / m.norm_one())
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vector<f64> {
    Vector::from_vec((0..n).map(|_| rng.gen_range(-scale..scale)).collect()).unwrap()
}

/// Classical RK4 on `ẋ = A x + B u` with `u` held, `substeps` steps over `span`.
/// Written independently of the library's steppers.
pub fn brute_force_hold(a: &Matrix<f64>, b: &Matrix<f64>, x: &[f64], u: &[f64], span: f64, substeps: usize) -> Vec<f64> {
    let n = a.rows();
    let m = b.cols();
    let forcing: Vec<f64> = (0..n).map(|i| (0..m).map(|j| b[(i, j)] * u[j]).sum()).collect();
    let f = |s: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| a[(i, j)] * s[j]).sum::<f64>() + forcing[i])
            .collect()
    };
    let h = span / substeps as f64;
    let mut s = x.to_vec();
    for _ in 0..substeps {
        let k1 = f(&s);
        let s2: Vec<f64> = (0..n).map(|i| s[i] + 0.5 * h * k1[i]).collect();
        let k2 = f(&s2);
        let s3: Vec<f64> = (0..n).map(|i| s[i] + 0.5 * h * k2[i]).collect();
        let k3 = f(&s3);
        let s4: Vec<f64> = (0..n).map(|i| s[i] + h * k3[i]).collect();
        let k4 = f(&s4);
        for i in 0..n {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    s
}

/// Fine-step explicit integration of the continuous delay equation
/// `ẋ(t) = −g x(t − h)` with `x ≡ x0` on `[−h, 0]`. Returns the peak of
/// `|x|` over the final `window` seconds.
pub fn delay_equation_tail_peak(g: f64, h: f64, horizon: f64, window: f64) -> f64 {
    let step = 1e-4;
    let lag = (h / step).round() as usize;
    let total = (horizon / step).round() as usize;
    let mut history = vec![1.0; lag + 1];
    let mut peak = 0.0f64;
    for k in 0..total {
        let x = *history.last().unwrap();
        let delayed = history[history.len() - 1 - lag];
        history.push(x - step * g * delayed);
        if (k as f64) * step >= horizon - window {
            peak = peak.max(x.abs());
        }
    }
    peak
}
