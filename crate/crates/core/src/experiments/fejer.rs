use crate::error::{Error, Result};
use crate::quad::{cumulative_simpson, gauss_legendre_composite};
use crate::signal::{fejer_phi, SampledFunction, DECAY_RATIO, NOISE_FLOOR};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The proved value of the finite-form Tauberian constant.
pub const TAUBERIAN_CONSTANT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: f64,
    /// Analytic tail bound plus the observed change between two
    /// Gauss–Legendre orders.
    pub error_bound: f64,
}

/// `I₁ = ∫₀⁴φ`, `I₂ = ∫₄^∞φ`, `I₃ = ∫₀⁴(2-x)φ`, `I₄ = ∫₄^∞2φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FejerTable {
    pub i1: CertifiedValue,
    pub i2: CertifiedValue,
    pub i3: CertifiedValue,
    pub i4: CertifiedValue,
    pub tol: f64,
}

impl FejerTable {
    pub fn values(&self) -> [f64; 4] {
        [self.i1.value, self.i2.value, self.i3.value, self.i4.value]
    }
}

fn gl_pair<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let hi = gauss_legendre_composite(f, a, b, panels, 12);
    let lo = gauss_legendre_composite(f, a, b, panels, 10);
    (hi, (hi - lo).abs())
}

/// `∫₄^∞ c·φ`: quadrature up to `X` plus `∫_X^∞ 2c/x²`; the neglected
/// oscillatory part `2c∫_X^∞ cos x/x²` is at most `4c/X²`.
fn fejer_tail(c: f64, tol: f64) -> CertifiedValue {
    let x_cut = (8.0 * c / tol).sqrt().max(8.0);
    let panels = ((x_cut - 4.0) / 2.0).ceil() as usize;
    let (body, quad_err) = gl_pair(move |x| c * fejer_phi(x), 4.0, x_cut, panels);
    CertifiedValue {
        value: body + 2.0 * c / x_cut,
        error_bound: 4.0 * c / (x_cut * x_cut) + quad_err,
    }
}

/// Fejér integrals with every error bound below `tol`.
pub fn fejer_integral_table_with_tol(tol: f64) -> Result<FejerTable> {
    if !(tol > 0.0) || tol > 1e-2 {
        return Err(Error::InvalidInput(format!(
            "tol = {tol} must lie in (0, 1e-2]"
        )));
    }
    let (i1, e1) = gl_pair(fejer_phi, 0.0, 4.0, 8);
    let (i3, e3) = gl_pair(|x| (2.0 - x) * fejer_phi(x), 0.0, 4.0, 8);
    Ok(FejerTable {
        i1: CertifiedValue {
            value: i1,
            error_bound: e1,
        },
        i2: fejer_tail(1.0, tol),
        i3: CertifiedValue {
            value: i3,
            error_bound: e3,
        },
        i4: fejer_tail(2.0, tol),
        tol,
    })
}

pub fn fejer_integral_table() -> FejerTable {
    fejer_integral_table_with_tol(1e-9).expect("default tolerance is valid")
}

/// `ℭ·M/λ` with `ℭ = 2`.
pub fn finite_form_bound(m: f64, lambda: f64) -> f64 {
    TAUBERIAN_CONSTANT * m / lambda
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteFormReport {
    /// `sup |ρ|` on the tail window.
    pub m: f64,
    pub lambda: f64,
    pub bound: f64,
    /// `sup |∫₀^x ρ - ρ̂(0)|` on the tail window.
    pub measured_limsup: f64,
    pub kernel_integrals: [f64; 4],
    pub window: (f64, f64),
    /// `measured_limsup·λ/M`, for exploration only (0 when `M = 0`).
    pub empirical_ratio: f64,
    /// `ρ` decays across the last two windows, so the limiting `M` is 0
    /// and the remainder must decay as well.
    pub rho_decays: bool,
    /// `sup |∫₀^x ρ - ρ̂(0)|` on `[xmax/4, xmax/2]`.
    pub previous_remainder: f64,
    pub within_bound: bool,
}

/// Compare `limsup |∫₀^x ρ - ρ̂(0)|` with `2M/λ` on the window
/// `[xmax/2, xmax]`.
///
/// `ρ` counts as unbounded when its sup on `[xmax/2, xmax]` exceeds 1.5
/// times the sup on `[xmax/4, xmax/2]`, and as decaying when it is below
/// `DECAY_RATIO` times that sup. For decaying `ρ` the limiting bound is 0,
/// and the check is that the remainder decays by the same ratio or sits
/// below `NOISE_FLOOR`.
pub fn finite_form_experiment(
    rho: &SampledFunction,
    rho_hat0: Complex64,
    lambda: f64,
) -> Result<FiniteFormReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let n = rho.len();
    let (q, h) = (n / 4, n / 2);
    let s = rho.samples();
    let sup = |a: usize, b: usize| s[a..b].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let early = sup(q, h);
    let m = sup(h, n);
    if m > 1.5 * early + 1e-12 {
        return Err(Error::Unbounded(format!(
            "sup |rho| grows from {early:.3e} to {m:.3e}"
        )));
    }
    let cum = cumulative_simpson(s, rho.dx());
    let remainder = |a: usize, b: usize| {
        cum[a..b]
            .iter()
            .map(|z| (z - rho_hat0).norm())
            .fold(0.0, f64::max)
    };
    let measured = remainder(h, n);
    let previous_remainder = remainder(q, h);
    let bound = finite_form_bound(m, lambda);
    let rho_decays = m <= DECAY_RATIO * early;
    let within_bound = measured <= bound * 1.05 + 1e-12
        || (rho_decays
            && (measured <= DECAY_RATIO * previous_remainder || measured <= NOISE_FLOOR));
    Ok(FiniteFormReport {
        m,
        lambda,
        bound,
        measured_limsup: measured,
        kernel_integrals: fejer_integral_table().values(),
        window: (rho.x(h), rho.xmax()),
        empirical_ratio: if m > 0.0 { measured * lambda / m } else { 0.0 },
        rho_decays,
        previous_remainder,
        within_bound,
    })
}
