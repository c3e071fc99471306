use super::kernel::TestKernel;
use super::sampled::{SampledFunction, StieltjesFunction};
use crate::error::{Error, Result};
use crate::quad::{self, cumulative_simpson, simpson};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A quadrature value with its reported truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    #[serde(with = "crate::complex_serde")]
    pub value: Complex64,
    pub truncation_bound: f64,
}

/// Bound on `∫_X^∞ |f| e^{-σx} dx` assuming `|f(x)| <= c(1+x)` with `c`
/// measured on `[X/2, X]`.
fn laplace_tail_bound(f: &SampledFunction, sigma: f64) -> f64 {
    let n = f.len();
    let x_end = f.xmax();
    let c = f.samples()[n / 2..]
        .iter()
        .enumerate()
        .map(|(k, z)| z.norm() / (1.0 + f.x(n / 2 + k)))
        .fold(0.0, f64::max);
    c * (-sigma * x_end).exp() * ((1.0 + x_end) / sigma + 1.0 / (sigma * sigma))
}

/// `∫₀^{xmax} f(x)e^{-sx}dx` by composite Simpson, with the truncation
/// bound for the neglected tail. With `tol` set, a bound above it is an
/// error.
pub fn laplace(f: &SampledFunction, s: Complex64, tol: Option<f64>) -> Result<Estimate> {
    if !(s.re > 0.0) {
        return Err(Error::Domain {
            function: "laplace",
            arg: s.re,
            reason: "requires Re s > 0",
        });
    }
    let bound = laplace_tail_bound(f, s.re);
    if let Some(tol) = tol {
        if bound > tol {
            return Err(Error::InsufficientXmax { bound, tol });
        }
    }
    Ok(Estimate {
        value: laplace_sum(f, s),
        truncation_bound: bound,
    })
}

fn laplace_sum(f: &SampledFunction, s: Complex64) -> Complex64 {
    let dx = f.dx();
    // e^{-s x_i} by stable recurrence in blocks to limit drift
    let step = (-s * dx).exp();
    let block = 256;
    let weighted: Vec<Complex64> = f
        .samples()
        .par_chunks(block)
        .enumerate()
        .flat_map_iter(|(b, chunk)| {
            let mut w = (-s * (b * block) as f64 * dx).exp();
            chunk.iter().map(move |z| {
                let v = z * w;
                w *= step;
                v
            })
        })
        .collect();
    simpson(&weighted, dx)
}

/// `Σ masses·e^{-s'·p} + ∫ density·e^{-s'x}dx` at `s' = s + alpha_shift`.
///
/// The jump sum is truncated at the last jump; its tail is bounded by the
/// geometric extrapolation of the last two terms, and a ratio `>= 1` is
/// reported as divergence.
pub fn stieltjes_laplace(
    st: &StieltjesFunction,
    s: Complex64,
    alpha_shift: f64,
) -> Result<Estimate> {
    let s = s + alpha_shift;
    let mut value = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let pts = st.jump_points();
    let ms = st.jump_masses();
    for (p, m) in pts.iter().zip(ms) {
        value += m * (-s * p).exp();
    }
    let n = pts.len();
    if n >= 3 {
        let term = |i: usize| ms[i] * (-s.re * pts[i]).exp();
        let (a, b) = (term(n - 2), term(n - 1));
        if b > 0.0 {
            let ratio = if a > 0.0 { b / a } else { f64::INFINITY };
            if ratio >= 1.0 {
                return Err(Error::Divergent(format!(
                    "jump terms grow (ratio {ratio:.3}) at Re s = {}",
                    s.re
                )));
            }
            bound += b * ratio / (1.0 - ratio);
        }
    }
    if let Some(d) = st.density() {
        if !(s.re > 0.0) {
            return Err(Error::Domain {
                function: "stieltjes_laplace",
                arg: s.re,
                reason: "density part needs Re s > 0",
            });
        }
        let est = laplace(d, s, None)?;
        value += est.value;
        bound += est.truncation_bound;
    }
    Ok(Estimate {
        value,
        truncation_bound: bound,
    })
}

/// Both sides of the Parseval pairing used to pass from the Laplace
/// transform to convolution averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParsevalCheck {
    #[serde(with = "crate::complex_serde")]
    pub time_side: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub freq_side: Complex64,
    pub gap: f64,
}

/// Time side `∫ f(x)e^{-σx}ψ(x-h)dx` against the frequency side
/// `(1/2π)∫ L{f;σ+it} e^{iht} ψ̂(-t) dt`.
///
/// The frequency integral runs over `supp ψ̂(-·) = [-t0-λ, -t0+λ]` with
/// composite Gauss–Legendre panels split at the corners of the triangle;
/// panel widths resolve the scales `σ`, `1/h` and the effective length of
/// the damped data.
pub fn parseval_crosscheck(
    f: &SampledFunction,
    k: &TestKernel,
    h: f64,
    sigma: f64,
) -> Result<ParsevalCheck> {
    if !(sigma > 0.0) {
        return Err(Error::Domain {
            function: "parseval_crosscheck",
            arg: sigma,
            reason: "requires sigma > 0",
        });
    }
    let dx = f.dx();
    let weighted: Vec<Complex64> = f
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let x = i as f64 * dx;
            z * (-sigma * x).exp() * k.eval(x - h)
        })
        .collect();
    let time_side = simpson(&weighted, dx);

    let reach = f.xmax().min(40.0 / sigma);
    let scale = (sigma / 4.0)
        .min(PI / (4.0 * (1.0 + h.abs())))
        .min(PI / (4.0 * reach));
    let order = 8;
    let (nodes, weights) = quad::gauss_legendre(order);
    let centre = -k.t0;
    let pieces = [(centre - k.lambda, centre), (centre, centre + k.lambda)];
    let mut jobs = Vec::new();
    for (a, b) in pieces {
        let panels = ((b - a) / scale).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * width;
            for (z, w) in nodes.iter().zip(&weights) {
                jobs.push((mid + 0.5 * width * z, 0.5 * width * w));
            }
        }
    }
    let freq_side: Complex64 = jobs
        .par_iter()
        .map(|&(t, w)| {
            let lv = laplace_sum(f, Complex64::new(sigma, t));
            lv * Complex64::from_polar(w * k.fourier(-t), h * t)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum::<Complex64>()
        / (2.0 * PI);
    Ok(ParsevalCheck {
        time_side,
        freq_side,
        gap: (time_side - freq_side).norm(),
    })
}

/// Partial spectral integrals `∫₀^x f(u)e^{-itu}du` at every grid node.
pub fn partial_spectral_integrals(f: &SampledFunction, t: f64) -> Vec<Complex64> {
    let dx = f.dx();
    let g: Vec<Complex64> = f
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| z * Complex64::from_polar(1.0, -t * i as f64 * dx))
        .collect();
    cumulative_simpson(&g, dx)
}

/// `max_{x ∈ [0, X]} |∫₀^x f(u)e^{-itu}du|` over grid nodes.
pub fn partial_spectral_integral_sup(f: &SampledFunction, t: f64, x_end: f64) -> Result<f64> {
    if x_end > f.xmax() * (1.0 + 1e-12) || x_end < 0.0 {
        return Err(Error::Range(format!(
            "X = {x_end} outside [0, {}]",
            f.xmax()
        )));
    }
    let last = ((x_end / f.dx()) + 1e-9).floor() as usize;
    let cum = partial_spectral_integrals(f, t);
    Ok(cum[..=last.min(cum.len() - 1)]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
