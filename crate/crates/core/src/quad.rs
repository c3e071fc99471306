//! Quadrature on uniform grids and fixed Gauss–Legendre panels.
//!
//! Grid rules work on equally spaced samples. An odd number of intervals is
//! handled by closing the last three intervals with Simpson's 3/8 rule, so
//! every rule here is fourth order.

use num_complex::Complex64;
use std::ops::{Add, Mul};

/// Composite Simpson rule over equally spaced samples.
pub fn simpson<T>(samples: &[T], dx: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
{
    let n = samples.len();
    match n {
        0 | 1 => T::default(),
        2 => (samples[0] + samples[1]) * (0.5 * dx),
        3 => (samples[0] + samples[1] * 4.0 + samples[2]) * (dx / 3.0),
        _ => {
            let intervals = n - 1;
            let (simpson_end, tail) = if intervals % 2 == 0 {
                (n - 1, false)
            } else {
                (n - 4, true)
            };
            let mut total = T::default();
            if simpson_end > 0 {
                let mut acc = samples[0] + samples[simpson_end];
                for (i, &v) in samples.iter().enumerate().take(simpson_end).skip(1) {
                    acc = acc + v * if i % 2 == 1 { 4.0 } else { 2.0 };
                }
                total = acc * (dx / 3.0);
            }
            if tail {
                let k = simpson_end;
                total = total
                    + (samples[k] + samples[k + 1] * 3.0 + samples[k + 2] * 3.0 + samples[k + 3])
                        * (3.0 * dx / 8.0);
            }
            total
        }
    }
}

/// Cumulative integral `I[i] = ∫_{x_0}^{x_i}` of equally spaced samples.
///
/// Even nodes use Simpson pairs; odd nodes use the three-point half-panel
/// rule `dx (5 f0 + 8 f1 - f2) / 12`, so every node is third-order accurate
/// locally and fourth-order on even nodes.
pub fn cumulative_simpson<T>(samples: &[T], dx: f64) -> Vec<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
{
    let n = samples.len();
    let mut out = vec![T::default(); n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = (samples[0] + samples[1]) * (0.5 * dx);
        return out;
    }
    let mut i = 0;
    while i + 2 < n {
        let (f0, f1, f2) = (samples[i], samples[i + 1], samples[i + 2]);
        out[i + 1] = out[i] + (f0 * 5.0 + f1 * 8.0 + f2 * -1.0) * (dx / 12.0);
        out[i + 2] = out[i] + (f0 + f1 * 4.0 + f2) * (dx / 3.0);
        i += 2;
    }
    if i + 1 < n {
        // one unpaired interval at the end
        let (f0, f1, f2) = (samples[i - 1], samples[i], samples[i + 1]);
        out[i + 1] = out[i] + (f0 * -1.0 + f1 * 8.0 + f2 * 5.0) * (dx / 12.0);
    }
    out
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre quadrature of a real integrand on `[a, b]`.
pub fn gauss_legendre_composite<F>(f: F, a: f64, b: f64, panels: usize, order: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let (nodes, weights) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let mut acc = 0.0;
        for (z, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + 0.5 * width * z);
        }
        total += 0.5 * width * acc;
    }
    total
}

/// Complex variant of [`gauss_legendre_composite`].
pub fn gauss_legendre_composite_c<F>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let re = gauss_legendre_composite(|x| f(x).re, a, b, panels, order);
    let im = gauss_legendre_composite(|x| f(x).im, a, b, panels, order);
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let dx = 0.1;
        for n in [3usize, 4, 5, 8, 11] {
            let xs: Vec<f64> = (0..n).map(|i| i as f64 * dx).collect();
            let ys: Vec<f64> = xs.iter().map(|x| x * x * x - 2.0 * x + 1.0).collect();
            let b = xs[n - 1];
            let exact = b.powi(4) / 4.0 - b * b + b;
            assert_relative_eq!(simpson(&ys, dx), exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn cumulative_matches_antiderivative_of_quadratic() {
        let dx = 0.05;
        let ys: Vec<f64> = (0..41).map(|i| (i as f64 * dx).powi(2)).collect();
        let cum = cumulative_simpson(&ys, dx);
        for (i, c) in cum.iter().enumerate() {
            let x = i as f64 * dx;
            assert!((c - x.powi(3) / 3.0).abs() < 1e-13, "node {i}");
        }
        let ys: Vec<f64> = (0..40).map(|i| (i as f64 * dx).powi(2)).collect();
        let cum = cumulative_simpson(&ys, dx);
        let x = 39.0 * dx;
        assert!((cum[39] - x.powi(3) / 3.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert_relative_eq!(s, 2.0 / 15.0, max_relative = 1e-13);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
    }
}
