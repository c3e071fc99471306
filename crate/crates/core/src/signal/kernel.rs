use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Base profile of a test kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelBase {
    /// `φ(x) = (sin(x/2)/(x/2))²`, `φ̂ = 2π·max(0, 1-|t|)`.
    Fejer,
}

/// Band-limited kernel `ψ(x) = e^{i t0 x} λ φ(λx)` (divided by `2π` when
/// normalized). Its Fourier transform `∫ψ(x)e^{-itx}dx` is the triangle of
/// half-width λ centred at `t0`, of height 1 (normalized) or `2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestKernel {
    pub lambda: f64,
    pub t0: f64,
    pub base: KernelBase,
    /// `‖ψ̂‖_{L¹}`.
    pub l1_norm_ft: f64,
    pub normalized: bool,
}

/// The Fejér profile `(sin(x/2)/(x/2))²`.
pub fn fejer_phi(x: f64) -> f64 {
    let h = 0.5 * x;
    if h.abs() < 1e-4 {
        let h2 = h * h;
        1.0 - h2 / 3.0 + 2.0 * h2 * h2 / 45.0
    } else {
        let s = h.sin() / h;
        s * s
    }
}

pub fn fejer_kernel(lambda: f64, t0: f64, normalized: bool) -> TestKernel {
    let height = if normalized { 1.0 } else { 2.0 * PI };
    TestKernel {
        lambda,
        t0,
        base: KernelBase::Fejer,
        l1_norm_ft: height * lambda,
        normalized,
    }
}

impl TestKernel {
    fn scale(&self) -> f64 {
        if self.normalized {
            self.lambda / (2.0 * PI)
        } else {
            self.lambda
        }
    }

    /// Real, even part `λ φ(λx)` (with normalization), without modulation.
    pub fn profile(&self, x: f64) -> f64 {
        match self.base {
            KernelBase::Fejer => self.scale() * fejer_phi(self.lambda * x),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        Complex64::from_polar(self.profile(x), self.t0 * x)
    }

    /// `ψ̂(t)`, exactly zero outside `[t0 - λ, t0 + λ]`.
    pub fn fourier(&self, t: f64) -> f64 {
        let height = if self.normalized { 1.0 } else { 2.0 * PI };
        height * (1.0 - ((t - self.t0) / self.lambda).abs()).max(0.0)
    }

    /// `∫ψ` (the value `ψ̂(t0)` of the unmodulated profile).
    pub fn integral(&self) -> f64 {
        if self.normalized {
            1.0
        } else {
            2.0 * PI
        }
    }

    /// Bound on `∫_{|x|>w} |ψ|` from `φ(x) <= 4/x²`.
    pub fn tail_mass(&self, w: f64) -> f64 {
        if w <= 0.0 {
            return f64::INFINITY;
        }
        // 2 ∫_w^∞ scale · 4/(λx)² dx
        8.0 * self.scale() / (self.lambda * self.lambda * w)
    }

    /// Same kernel recentred at another frequency.
    pub fn at(&self, t0: f64) -> TestKernel {
        TestKernel { t0, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_legendre_composite;

    #[test]
    fn value_at_origin_and_normalization() {
        let k = fejer_kernel(1.0, 0.0, false);
        assert_eq!(k.eval(0.0), Complex64::new(1.0, 0.0));
        assert_eq!(k.l1_norm_ft, 2.0 * PI);
        let kn = fejer_kernel(0.5, 0.0, true);
        assert!((kn.l1_norm_ft - 0.5).abs() < 1e-15);
        assert_eq!(kn.fourier(0.6), 0.0);
        assert!((kn.fourier(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn total_mass_is_two_pi() {
        // quadrature on [-X, X] plus the certified tail ∫_{|x|>X} φ <= 8/X
        let x_cut = 4000.0;
        let body = 2.0 * gauss_legendre_composite(fejer_phi, 0.0, x_cut, 8000, 10);
        let tail = 8.0 / x_cut;
        assert!((body - 2.0 * PI).abs() <= tail);
        assert!((body - 2.0 * PI).abs() < 1e-3);
    }

    #[test]
    fn small_argument_branch_is_continuous() {
        for &x in &[1.9e-4, 2.1e-4, 1e-6] {
            let direct = ((x / 2.0f64).sin() / (x / 2.0)).powi(2);
            assert!((fejer_phi(x) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn envelope_bound_holds() {
        for i in 1..2000 {
            let x = i as f64 * 0.37;
            assert!(fejer_phi(x) <= 4.0 / (x * x) + 1e-15);
        }
    }
}
