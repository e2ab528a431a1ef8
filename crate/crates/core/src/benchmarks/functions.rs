use std::f64::consts::{E, PI};

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cos = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cos.exp() + 20.0 + E
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(k, v)| (v / ((k + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

/// The four minima of [`four_peaks`] as `(position, depth)`: two global
/// basins of depth 2 and two local basins of depth 1.
pub const FOUR_PEAKS_MINIMA: [([f64; 2], f64); 4] = [
    ([0.0, 0.0], -2.0),
    ([0.0, -4.0], -2.0),
    ([4.0, 4.0], -1.0),
    ([-4.0, 4.0], -1.0),
];

/// Two-dimensional landscape with four Gaussian wells.
pub fn four_peaks(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let well = |cx: f64, cy: f64| (-(a - cx).powi(2) - (b - cy).powi(2)).exp();
    -(well(4.0, 4.0) + well(-4.0, 4.0) + 2.0 * (well(0.0, 0.0) + well(0.0, -4.0)))
}
