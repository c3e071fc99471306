//! Windowed estimators of the Tauberian side conditions, Ingham averages and
//! the smoothing representation.
//!
//! Every tail quantity (`limsup`, `liminf`) is replaced by an extremum over
//! an explicit window `[X0, xmax]`; shifts `h` and widths `δ` run over the
//! sample grid. Complex data is checked component-wise.

use crate::error::{Error, Result};
use crate::quad::cumulative_simpson;
use crate::signal::{SampledFunction, StieltjesFunction};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Per-step tolerance of the monotonicity test in [`check_t2_condition`].
pub const T2_STEP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationModulus {
    pub deltas: Vec<f64>,
    pub psi_values: Vec<f64>,
    /// `(X0, X1)`: the x-range of the surrogate.
    pub window: (f64, f64),
}

impl OscillationModulus {
    /// `sup_δ Ψ(δ)/δ`, the surrogate of `Ψ′(0⁺)`.
    pub fn slope_at_zero(&self) -> f64 {
        self.deltas
            .iter()
            .zip(&self.psi_values)
            .map(|(d, p)| p / d)
            .fold(0.0, f64::max)
    }

    /// Largest violation of `Ψ(δ_i + δ_j) <= Ψ(δ_i) + Ψ(δ_j)` over pairs
    /// whose sum is itself on the δ list.
    pub fn subadditivity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.deltas.len();
        for i in 0..n {
            for j in i..n {
                let sum = self.deltas[i] + self.deltas[j];
                if let Some(k) = self
                    .deltas
                    .iter()
                    .position(|d| (d - sum).abs() <= 1e-9 * sum.max(1.0))
                {
                    let excess = self.psi_values[k] - self.psi_values[i] - self.psi_values[j];
                    worst = worst.max(excess);
                }
            }
        }
        worst
    }
}

fn steps_of(f: &SampledFunction, delta: f64) -> usize {
    ((delta / f.dx()) + 1e-9).round().max(1.0) as usize
}

fn component_parts(f: &SampledFunction) -> Vec<Vec<f64>> {
    if f.is_real() {
        vec![f.real_parts()]
    } else {
        vec![f.real_parts(), f.imag_parts()]
    }
}

/// `min_{0<=k<=d} (v[i+k] - v[i])` for `i ∈ [lo, hi]`, reduced by `min`.
fn worst_increment(v: &[f64], lo: usize, hi: usize, d: usize) -> f64 {
    if lo > hi {
        return 0.0;
    }
    (lo..=hi)
        .into_par_iter()
        .map(|i| {
            let base = v[i];
            v[i + 1..=i + d]
                .iter()
                .fold(0.0f64, |acc, &w| acc.min(w - base))
        })
        .reduce(|| 0.0, f64::min)
}

/// Per-x worst increments `min_{0<=k<=d}(v[i+k]-v[i])` for `i ∈ [lo, hi]`.
fn worst_increment_profile(v: &[f64], lo: usize, hi: usize, d: usize) -> Vec<f64> {
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi)
        .into_par_iter()
        .map(|i| {
            let base = v[i];
            v[i + 1..=i + d]
                .iter()
                .fold(0.0f64, |acc, &w| acc.min(w - base))
        })
        .collect()
}

fn start_index(f: &SampledFunction, x0: f64) -> Result<usize> {
    if !(x0 >= 0.0) || x0 > f.xmax() {
        return Err(Error::Range(format!("X0 = {x0} outside [0, {}]", f.xmax())));
    }
    Ok(((x0 / f.dx()) - 1e-9).ceil().max(0.0) as usize)
}

/// `Ψ(δ) ≈ max_{x ∈ [X0, xmax-δ]} max_{h ∈ (0,δ]} |f(x+h) - f(x)|`.
///
/// The per-δ maxima are made non-decreasing in δ by a running maximum
/// (the x-range shrinks as δ grows).
pub fn oscillation_modulus(
    f: &SampledFunction,
    deltas: &[f64],
    x0: f64,
) -> Result<OscillationModulus> {
    if deltas.is_empty() || deltas.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::InvalidInput("deltas must be positive".into()));
    }
    if deltas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("deltas must increase".into()));
    }
    let dmax = deltas[deltas.len() - 1];
    if x0 + dmax > f.xmax() + 1e-9 * f.dx() {
        return Err(Error::Range(format!(
            "X0 + max delta = {} exceeds xmax = {}",
            x0 + dmax,
            f.xmax()
        )));
    }
    let i0 = start_index(f, x0)?;
    let n = f.len();
    let steps: Vec<usize> = deltas.iter().map(|&d| steps_of(f, d)).collect();
    let samples = f.samples();
    // for each x, running max over h, sampled at each δ
    let per_delta = (i0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![0.0f64; steps.len()];
            let mut best = 0.0f64;
            let mut k = 0;
            for (j, &d) in steps.iter().enumerate() {
                if i + d > n - 1 {
                    break;
                }
                while k < d {
                    k += 1;
                    best = best.max((samples[i + k] - samples[i]).norm());
                }
                out[j] = best;
            }
            out
        })
        .reduce(
            || vec![0.0f64; steps.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect(),
        );
    let mut psi = per_delta;
    for j in 1..psi.len() {
        psi[j] = psi[j].max(psi[j - 1]);
    }
    Ok(OscillationModulus {
        deltas: deltas.to_vec(),
        psi_values: psi,
        window: (i0 as f64 * f.dx(), f.xmax()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlowDecrease {
    pub holds: bool,
    /// Largest δ on the grid `1, 1/2, 1/4, …` (down to Δx) that works.
    pub delta_found: f64,
    /// Worst increment at that δ (or at the smallest δ tried).
    pub worst_increment: f64,
}

/// Search δ on the halving grid `1, 1/2, …, ≥ Δx` for
/// `min_{x ∈ [X0, xmax-δ], h ∈ [0,δ]} (f(x+h) - f(x)) > -eps`.
pub fn check_slowly_decreasing(f: &SampledFunction, eps: f64, x0: f64) -> Result<SlowDecrease> {
    let i0 = start_index(f, x0)?;
    let parts = component_parts(f);
    let n = f.len();
    let mut delta = 1.0;
    let mut last_worst = 0.0;
    loop {
        let d = steps_of(f, delta);
        if i0 + d <= n - 1 {
            let worst = parts
                .iter()
                .map(|v| worst_increment(v, i0, n - 1 - d, d))
                .fold(0.0, f64::min);
            last_worst = worst;
            if worst > -eps {
                return Ok(SlowDecrease {
                    holds: true,
                    delta_found: d as f64 * f.dx(),
                    worst_increment: worst,
                });
            }
        }
        if d == 1 {
            break;
        }
        delta *= 0.5;
    }
    Ok(SlowDecrease {
        holds: false,
        delta_found: 0.0,
        worst_increment: last_worst,
    })
}

/// `M = max(0, -min_{x >= X0, h ∈ [0,δ]} (f(x+h) - f(x)))`.
pub fn check_boundedly_decreasing(f: &SampledFunction, delta: f64, x0: f64) -> Result<f64> {
    let i0 = start_index(f, x0)?;
    bounded_decrease_on(f, delta, i0, f.len() - 1)
}

fn bounded_decrease_on(f: &SampledFunction, delta: f64, lo: usize, end: usize) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!("delta = {delta} must be > 0")));
    }
    let d = steps_of(f, delta);
    if lo + d > end {
        return Err(Error::Range(format!(
            "window too short for delta = {delta}"
        )));
    }
    let worst = component_parts(f)
        .iter()
        .map(|v| worst_increment(v, lo, end - d, d))
        .fold(0.0, f64::min);
    Ok((-worst).max(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerySlowProfile {
    pub delta: f64,
    pub x0_grid: Vec<f64>,
    /// `inf_{x >= X0} inf_{h ∈ [0,δ]} (f(x+h) - f(x))` for each `X0`.
    pub profile: Vec<f64>,
    pub tol: f64,
    /// The last profile value is `>= -tol`.
    pub holds: bool,
}

/// Running infimum of worst increments as `X0` sweeps `x0_grid`.
pub fn check_very_slowly_decreasing(
    f: &SampledFunction,
    delta: f64,
    x0_grid: &[f64],
    tol: f64,
) -> Result<VerySlowProfile> {
    if x0_grid.is_empty() {
        return Err(Error::InvalidInput("empty X0 grid".into()));
    }
    let d = steps_of(f, delta);
    let n = f.len();
    if d >= n {
        return Err(Error::Range(format!("delta = {delta} exceeds xmax")));
    }
    let hi = n - 1 - d;
    let mut suffix = vec![0.0f64; hi + 1];
    for v in component_parts(f) {
        let prof = worst_increment_profile(&v, 0, hi, d);
        for (s, p) in suffix.iter_mut().zip(prof) {
            *s = s.min(p);
        }
    }
    for i in (0..hi).rev() {
        suffix[i] = suffix[i].min(suffix[i + 1]);
    }
    let mut profile = Vec::with_capacity(x0_grid.len());
    for &x0 in x0_grid {
        let i0 = start_index(f, x0)?;
        if i0 > hi {
            return Err(Error::Range(format!("X0 = {x0} leaves no room for delta")));
        }
        profile.push(suffix[i0]);
    }
    let holds = profile[profile.len() - 1] >= -tol;
    Ok(VerySlowProfile {
        delta: d as f64 * f.dx(),
        x0_grid: x0_grid.to_vec(),
        profile,
        tol,
        holds,
    })
}

/// `e^{βx}f(x)` is non-negative and non-decreasing on grid nodes `x >= X0`.
///
/// Steps are compared as `e^{βΔx}f_{i+1} - f_i >= -1e-12`, which avoids
/// forming `e^{βx}` for large `x`.
pub fn check_t2_condition(f: &SampledFunction, beta: f64, x0: f64) -> Result<bool> {
    if !f.is_real() {
        return Err(Error::InvalidInput(
            "T2 check needs real-valued data".into(),
        ));
    }
    let i0 = start_index(f, x0)?;
    let v = f.real_parts();
    let growth = (beta * f.dx()).exp();
    let nonneg = v[i0..].iter().all(|&y| y >= -T2_STEP_TOL);
    let monotone = v[i0..]
        .windows(2)
        .all(|w| growth * w[1] - w[0] >= -T2_STEP_TOL);
    Ok(nonneg && monotone)
}

/// `J_i = ∫₀^{x_i} e^{-θ(x_i-u)} v(u) du` by Simpson pairs with the
/// three-point half-panel rule at odd nodes.
fn damped_cumulative(v: &[Complex64], dx: f64, theta: f64) -> Vec<Complex64> {
    let n = v.len();
    let mut j = vec![Complex64::new(0.0, 0.0); n];
    if n < 2 {
        return j;
    }
    let e1 = (-theta * dx).exp();
    let e2 = e1 * e1;
    let ep = (theta * dx).exp();
    if n == 2 {
        j[1] = (v[0] * e1 + v[1]) * (0.5 * dx);
        return j;
    }
    let mut i = 0;
    while i + 2 < n {
        let (a, b, c) = (v[i], v[i + 1], v[i + 2]);
        j[i + 1] = j[i] * e1 + (a * (5.0 * e1) + b * 8.0 - c * ep) * (dx / 12.0);
        j[i + 2] = j[i] * e2 + (a * e2 + b * (4.0 * e1) + c) * (dx / 3.0);
        i += 2;
    }
    if i + 1 < n {
        let (a, b, c) = (v[i - 1], v[i], v[i + 1]);
        j[i + 1] = j[i] * e1 + (-(a * e2) + b * (8.0 * e1) + c * 5.0) * (dx / 12.0);
    }
    j
}

/// Ingham average `T_θ(x) = e^{-θx}∫_{0⁻}^x e^{θu}dτ(u)` of a sampled `τ`
/// (vanishing on `x < 0`, so a nonzero `τ(0)` is a jump at the origin).
///
/// Integration by parts gives `T_θ = τ - θ∫₀^x e^{-θ(x-u)}τ(u)du`.
pub fn ingham_average(tau: &SampledFunction, theta: f64) -> Result<SampledFunction> {
    if !(theta > 0.0) {
        return Err(Error::InvalidInput(format!("theta = {theta} must be > 0")));
    }
    let j = damped_cumulative(tau.samples(), tau.dx(), theta);
    let t: Vec<Complex64> = tau
        .samples()
        .iter()
        .zip(&j)
        .map(|(&a, &b)| a - b * theta)
        .collect();
    SampledFunction::new(tau.dx(), t)
}

/// Ingham average of a Stieltjes measure `dS` on the grid `n·dx` of
/// `[0, xmax]`: jumps contribute `m e^{-θ(x-p)}` for `p <= x`, the density
/// `e^{-θx}∫₀^x e^{θu}ρ(u)du`.
pub fn ingham_average_stieltjes(
    s: &StieltjesFunction,
    theta: f64,
    dx: f64,
    xmax: f64,
) -> Result<SampledFunction> {
    if !(theta > 0.0) {
        return Err(Error::InvalidInput(format!("theta = {theta} must be > 0")));
    }
    let grid = SampledFunction::zeros(dx, xmax)?;
    let n = grid.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let decay = (-theta * dx).exp();
    let (pts, ms) = (s.jump_points(), s.jump_masses());
    let mut acc = 0.0;
    let mut k = 0;
    for (i, o) in out.iter_mut().enumerate() {
        let x = i as f64 * dx;
        if i > 0 {
            acc *= decay;
        }
        while k < pts.len() && pts[k] <= x + 1e-12 * dx {
            acc += ms[k] * (-theta * (x - pts[k])).exp();
            k += 1;
        }
        o.re = acc;
    }
    if let Some(d) = s.density() {
        if (d.dx() - dx).abs() > 1e-12 * dx {
            return Err(Error::InvalidGrid("density grid differs from dx".into()));
        }
        let j = damped_cumulative(d.samples(), dx, theta);
        for (i, o) in out.iter_mut().enumerate() {
            if i < j.len() {
                *o += j[i];
            }
        }
    }
    SampledFunction::new(dx, out)
}

/// `τ = T_θ + θ∫₀^x T_θ`.
pub fn reconstruct_from_ingham(t: &SampledFunction, theta: f64) -> Result<SampledFunction> {
    if !(theta > 0.0) {
        return Err(Error::InvalidInput(format!("theta = {theta} must be > 0")));
    }
    let cum = cumulative_simpson(t.samples(), t.dx());
    let tau: Vec<Complex64> = t
        .samples()
        .iter()
        .zip(&cum)
        .map(|(&a, &b)| a + b * theta)
        .collect();
    SampledFunction::new(t.dx(), tau)
}

#[derive(Debug, Clone)]
pub struct SmoothRepresentation {
    /// Derivative of the mollified function, on `[0, xmax - width]`.
    pub g: SampledFunction,
    /// `sup |f(x) - ∫₀^x g|` over the domain of `g`.
    pub remainder_bound: f64,
    /// Mollifier width actually used (a multiple of `2Δx`).
    pub width: f64,
    /// `Ψ(width)·∫|φ′|`, an a-priori bound for `|g|`.
    pub g_bound: f64,
}

/// Mollifier `φ(y) = 30 y²(w-y)²/w⁵` on `(0, w)`, unit mass.
fn bump_derivative(y: f64, w: f64) -> f64 {
    60.0 * y * (w - y) * (w - 2.0 * y) / w.powi(5)
}

/// `g(x) = d/dx ∫ f(x+y)φ(y)dy = -∫ f(x+y)φ′(y)dy` and the remainder of
/// `f = ∫₀^x g + O(1)`.
///
/// Growth of the bounded-decrease constant from `[X/4, X/2]` to `[X/2, X]`
/// (by more than half) is reported as unbounded oscillation.
pub fn smooth_representation(f: &SampledFunction, width: f64) -> Result<SmoothRepresentation> {
    let dx = f.dx();
    let m = {
        let k = (width / dx).round() as usize;
        (k + k % 2).max(2)
    };
    let w = m as f64 * dx;
    let n = f.len();
    if m + 8 > n {
        return Err(Error::Range(format!("width {width} too large for xmax")));
    }

    let quarter = n / 4;
    let half = n / 2;
    let mut early = 0.0f64;
    let mut late = 0.0f64;
    let neg = f.map(|_, z| -z);
    for g in [f, &neg] {
        early = early.max(bounded_decrease_on(g, w, quarter, half)?);
        late = late.max(bounded_decrease_on(g, w, half, n - 1)?);
    }
    if late > 1.5 * early + 1e-9 {
        return Err(Error::UnboundedOscillation(format!(
            "decrease bound grows from {early:.3e} on [X/4, X/2] to {late:.3e} on [X/2, X]"
        )));
    }

    // Simpson weights of -φ′, rescaled so the discrete first moment is
    // exactly 1 (then g ≡ 1 for f(x) = x on the grid)
    let mut weights: Vec<f64> = (0..=m)
        .map(|k| {
            let sw = if k == 0 || k == m {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            -bump_derivative(k as f64 * dx, w) * sw * dx / 3.0
        })
        .collect();
    let moment: f64 = weights
        .iter()
        .enumerate()
        .map(|(k, c)| c * k as f64 * dx)
        .sum();
    for c in weights.iter_mut() {
        *c /= moment;
    }
    let samples = f.samples();
    let len = n - m;
    let g: Vec<Complex64> = (0..len)
        .into_par_iter()
        .map(|i| (0..=m).map(|k| samples[i + k] * weights[k]).sum())
        .collect();
    let int_g = cumulative_simpson(&g, dx);
    let remainder_bound = (0..len)
        .map(|i| (samples[i] - int_g[i]).norm())
        .fold(0.0, f64::max);
    let psi = oscillation_modulus(f, &[w], 0.0)?.psi_values[0];
    let g_norm = 15.0 / (4.0 * w);
    Ok(SmoothRepresentation {
        g: SampledFunction::new(dx, g)?,
        remainder_bound,
        width: w,
        g_bound: psi * g_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64 + Send + Sync + 'static, dx: f64, xmax: f64) -> SampledFunction {
        SampledFunction::from_real_fn(f, dx, xmax).unwrap()
    }

    /// Brute-force oracle: every pair of nodes.
    fn psi_oracle(v: &[f64], i0: usize, d: usize) -> f64 {
        let mut best: f64 = 0.0;
        for i in i0..v.len() - d {
            for k in 1..=d {
                best = best.max((v[i + k] - v[i]).abs());
            }
        }
        best
    }

    #[test]
    fn modulus_of_constant_line_and_sine() {
        let dx = 0.01;
        let c = real(|_| 3.0, dx, 20.0);
        let om = oscillation_modulus(&c, &[0.5, 1.0], 0.0).unwrap();
        assert_eq!(om.psi_values, vec![0.0, 0.0]);

        let line = real(|x| x, dx, 20.0);
        let om = oscillation_modulus(&line, &[0.1, 0.5, 1.0], 0.0).unwrap();
        for (d, p) in om.deltas.iter().zip(&om.psi_values) {
            assert!((p - d).abs() <= dx);
        }
        assert!((om.slope_at_zero() - 1.0).abs() < 1e-9);

        let sine = real(f64::sin, dx, 40.0);
        let deltas: Vec<f64> = (1..=31).map(|k| k as f64 * 0.1).collect();
        let om = oscillation_modulus(&sine, &deltas, 2.0).unwrap();
        let v = sine.real_parts();
        for (d, p) in deltas.iter().zip(&om.psi_values) {
            assert!((p - 2.0 * (d / 2.0).sin()).abs() <= 2.0 * dx, "delta {d}");
            let k = (d / dx).round() as usize;
            assert!((p - psi_oracle(&v, 200, k)).abs() <= 1e-12);
        }
    }

    #[test]
    fn modulus_range_error() {
        let line = real(|x| x, 0.1, 5.0);
        assert!(matches!(
            oscillation_modulus(&line, &[1.0, 2.0], 4.0),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn slow_decrease() {
        let dx = 0.01;
        let up = real(|x| x * x, dx, 30.0);
        assert!(check_slowly_decreasing(&up, 0.01, 0.0).unwrap().holds);
        let sine = real(f64::sin, dx, 60.0);
        let r = check_slowly_decreasing(&sine, 0.1, 0.0).unwrap();
        assert!(r.holds);
        // grid oracle: largest δ with 2 sin(δ/2) < 0.1 is about 0.1
        assert!(r.delta_found <= 0.1 && r.delta_found >= 0.05, "{r:?}");
        let down = real(|x| -x, dx, 30.0);
        assert!(!check_slowly_decreasing(&down, dx / 2.0, 0.0).unwrap().holds);
    }

    #[test]
    fn bounded_decrease() {
        let dx = 0.01;
        let up = real(|x| x.sqrt(), dx, 30.0);
        assert_eq!(check_boundedly_decreasing(&up, 1.0, 0.0).unwrap(), 0.0);
        let sine = real(f64::sin, dx, 60.0);
        let m = check_boundedly_decreasing(&sine, PI, 0.0).unwrap();
        assert!((m - 2.0).abs() <= 2.0 * dx);
        let ex = real(|x| x * (1.0 + x.cos() / 2.0), dx, 100.0);
        let m = check_boundedly_decreasing(&ex, 0.5, 0.0).unwrap();
        let v = ex.real_parts();
        let mut oracle: f64 = 0.0;
        for i in 0..v.len() - 50 {
            for k in 0..=50 {
                oracle = oracle.max(v[i] - v[i + k]);
            }
        }
        assert_eq!(m, oracle);
        assert!(m > 0.0 && m.is_finite());
    }

    #[test]
    fn very_slow_decrease() {
        let dx = 0.01;
        let grid: Vec<f64> = (0..10).map(|k| 50.0 * k as f64).collect();
        let up = real(|x| x.ln_1p(), dx, 500.0);
        let p = check_very_slowly_decreasing(&up, 1.0, &grid, 1e-12).unwrap();
        assert!(p.holds && p.profile.iter().all(|&v| v == 0.0));
        let damped = real(|x| x.sin() / (1.0 + x), dx, 500.0);
        let p = check_very_slowly_decreasing(&damped, 1.0, &grid, 0.01).unwrap();
        assert!(p.holds);
        assert!(p.profile.windows(2).all(|w| w[1] >= w[0]));
        let sine = real(f64::sin, dx, 500.0);
        let p = check_very_slowly_decreasing(&sine, 1.0, &grid, 0.01).unwrap();
        assert!(!p.holds);
        assert!((p.profile[9] + 2.0 * 0.5f64.sin()).abs() < 2.0 * dx);
    }

    #[test]
    fn t2_condition() {
        let dx = 0.01;
        assert!(check_t2_condition(&real(|x| (-x).exp(), dx, 50.0), 1.0, 0.0).unwrap());
        let ex = real(|x| x * (1.0 + x.cos() / 2.0), dx, 200.0);
        assert!(check_t2_condition(&ex, 1.0, 0.0).unwrap());
        assert!(!check_t2_condition(&real(f64::sin, dx, 50.0), 0.0, 0.0).unwrap());
    }

    #[test]
    fn ingham_examples() {
        let dx = 1e-3;
        let line = real(|x| x, dx, 20.0);
        let t = ingham_average(&line, 1.0).unwrap();
        for (i, z) in t.samples().iter().enumerate() {
            let x = i as f64 * dx;
            assert!((z.re - (1.0 - (-x).exp())).abs() < 1e-10, "x={x}");
        }
        let step = StieltjesFunction::new(vec![0.0], vec![1.0], None).unwrap();
        let t = ingham_average_stieltjes(&step, 2.0, 0.01, 5.0).unwrap();
        for (i, z) in t.samples().iter().enumerate() {
            assert!((z.re - (-2.0 * i as f64 * 0.01).exp()).abs() < 1e-12);
        }
        let zero = SampledFunction::zeros(0.1, 10.0).unwrap();
        assert!(ingham_average(&zero, 1.0).unwrap().max_abs() == 0.0);
        assert!(reconstruct_from_ingham(&zero, 1.0).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn reconstruct_examples() {
        let dx = 1e-3;
        let t = real(|x| 1.0 - (-x).exp(), dx, 20.0);
        let tau = reconstruct_from_ingham(&t, 1.0).unwrap();
        for (i, z) in tau.samples().iter().enumerate() {
            assert!((z.re - i as f64 * dx).abs() < 1e-8);
        }
        let t = real(|x| (-0.5 * x).exp(), dx, 20.0);
        let tau = reconstruct_from_ingham(&t, 0.5).unwrap();
        assert!(tau.samples().iter().all(|z| (z.re - 1.0).abs() < 1e-9));
    }

    #[test]
    fn smooth_representation_examples() {
        let dx = 0.01;
        let line = real(|x| x, dx, 50.0);
        let r = smooth_representation(&line, 1.0).unwrap();
        assert!(r.g.samples().iter().all(|z| (z.re - 1.0).abs() < 1e-9));
        assert!(r.remainder_bound < 1e-9);

        let step = real(|x| if x >= 1.0 { 1.0 } else { 0.0 }, dx, 50.0);
        let r = smooth_representation(&step, 0.5).unwrap();
        assert!(r.remainder_bound <= 1.0 + 1e-3, "{}", r.remainder_bound);
        let total: f64 = crate::quad::simpson(&r.g.real_parts(), dx);
        assert!((total - 1.0).abs() < 1e-6);

        let sine = real(f64::sin, dx, 100.0);
        let r = smooth_representation(&sine, 1.0).unwrap();
        let gmax = r.g.max_abs();
        assert!(gmax <= r.g_bound + 1e-9, "{gmax} vs {}", r.g_bound);
        assert!(r.remainder_bound < 3.0);

        let growing = real(|x| x * x.sin(), dx, 200.0);
        assert!(matches!(
            smooth_representation(&growing, 1.0),
            Err(Error::UnboundedOscillation(_))
        ));
    }
}
