//! Reference computations the acceptance criteria compare against. None of
//! them go through the code paths they check.

use crate::specfun::gamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `1/Γ(y)` on the whole real line, using `1/Γ(y) = Γ(1-y)sin(πy)/π` for
/// `y <= 0`.
pub fn recip_gamma(y: f64) -> f64 {
    if y > 0.0 {
        1.0 / gamma(y).expect("positive argument")
    } else {
        gamma(1.0 - y).expect("argument >= 1") * (PI * y).sin() / PI
    }
}

/// Fornberg weights for the `m`-th derivative at `x0` from the nodes `xs`.
pub fn fornberg_weights(x0: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.swap_remove(m)
}

fn central_difference(j: usize, omega: f64, h: f64) -> f64 {
    let p = (j + 1) / 2 + 3;
    let nodes: Vec<f64> = (-(p as i32)..=p as i32).map(f64::from).collect();
    let w = fornberg_weights(0.0, &nodes, j);
    let sum: f64 = nodes
        .iter()
        .zip(&w)
        .map(|(&k, &wk)| wk * recip_gamma(omega + k * h))
        .sum();
    sum / h.powi(j as i32)
}

/// `(d/dy)^j (1/Γ)(ω)` by central differences on `2p+1` nodes with one
/// Richardson step (`h`, `h/2`).
pub fn fd_recip_gamma_derivative(j: usize, omega: f64) -> f64 {
    if j == 0 {
        return recip_gamma(omega);
    }
    let h = if j <= 2 { 1e-2 } else { 0.15 };
    let coarse = central_difference(j, omega, h);
    let fine = central_difference(j, omega, 0.5 * h);
    (256.0 * fine - coarse) / 255.0
}

/// `1/s² + 1/(4(s-i)²) + 1/(4(s+i)²)`, the transform of `x(1 + cos(x)/2)`.
pub fn linear_with_cosine_transform(s: Complex64) -> Complex64 {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    one / (s * s) + 0.25 / ((s - i) * (s - i)) + 0.25 / ((s + i) * (s + i))
}

/// `2 sin(δ/2)`: the oscillation modulus of `sin` for `δ ∈ [0, π]`.
pub fn sine_modulus(delta: f64) -> f64 {
    2.0 * (0.5 * delta).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    #[test]
    fn fornberg_matches_textbook_stencils() {
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w, vec![1.0, -2.0, 1.0]);
        let w = fornberg_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let want = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn recip_gamma_is_continuous_through_zero() {
        assert!(recip_gamma(0.0).abs() < 1e-15);
        assert!(recip_gamma(-1.0).abs() < 1e-15);
        // 1/Γ(y) ≈ y near 0
        assert!((recip_gamma(1e-6) - 1e-6).abs() < 1e-11);
        assert!((recip_gamma(-1e-6) + 1e-6).abs() < 1e-11);
    }

    #[test]
    fn first_derivative_at_one_is_euler_gamma() {
        assert!((fd_recip_gamma_derivative(1, 1.0) - EULER_GAMMA).abs() < 1e-10);
    }
}
