use super::average::symmetric_average;
use super::kernel::fejer_kernel;
use super::sampled::{fmt_f, SampledFunction};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

/// Consecutive window maxima must shrink at least by this factor to count
/// as decay.
pub const DECAY_RATIO: f64 = 0.8;
/// Window maxima within this factor of the first window count as bounded.
pub const BOUNDED_RATIO: f64 = 1.25;
/// Window maxima below this absolute level are treated as zero.
pub const NOISE_FLOOR: f64 = 1e-6;
/// Fewest dyadic windows a verdict may rest on.
pub const MIN_WINDOWS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pseudofunction,
    PseudomeasureOnly,
    Neither,
    Inconclusive,
}

/// Dyadic shift windows `[H₀2^m, H₀2^{m+1}]`, `m = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicWindows {
    pub h0: f64,
    pub count: usize,
}

impl DyadicWindows {
    /// Four windows starting at `H₀ = 8/λ`.
    pub fn standard(lambda: f64) -> Self {
        Self {
            h0: 8.0 / lambda,
            count: 4,
        }
    }

    /// Largest shift probed.
    pub fn h_max(&self) -> f64 {
        self.h0 * 2f64.powi(self.count as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowStat {
    pub h_lo: f64,
    pub h_hi: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryClassification {
    pub verdict: Verdict,
    pub t0: f64,
    pub lambda: f64,
    /// `(h, |average|)` for every probed shift.
    pub avg_stats: Vec<(f64, f64)>,
    pub windows: Vec<WindowStat>,
    /// Least-squares slope of `log₂(window max)` against the window index.
    pub trend: f64,
}

impl BoundaryClassification {
    /// CSV with header `h,abs_avg`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["h", "abs_avg"])?;
        for (h, v) in &self.avg_stats {
            out.write_record([fmt_f(*h), fmt_f(*v)])?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Verdict from dyadic window maxima.
pub fn verdict_from_maxima(v: &[f64]) -> Verdict {
    if v.iter().all(|&x| x <= NOISE_FLOOR) {
        return Verdict::Pseudofunction;
    }
    let decaying = v
        .windows(2)
        .all(|w| w[1] <= DECAY_RATIO * w[0] || w[1] <= NOISE_FLOOR);
    if decaying {
        return Verdict::Pseudofunction;
    }
    let v0 = v[0];
    if v.iter().all(|&x| x <= BOUNDED_RATIO * v0) {
        return Verdict::PseudomeasureOnly;
    }
    if v[v.len() - 1] > BOUNDED_RATIO * v0 {
        return Verdict::Neither;
    }
    Verdict::Inconclusive
}

/// Slope of `log₂ v_m` against `m`.
pub fn dyadic_trend(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    if v.len() < 2 {
        return 0.0;
    }
    let ys: Vec<f64> = v.iter().map(|x| x.max(1e-300).log2()).collect();
    let mx = (n - 1.0) / 2.0;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - mx;
        sxy += dx * (y - my);
        sxx += dx * dx;
    }
    sxy / sxx
}

/// Boundary behaviour of the Laplace transform of `f` near `i·t0`.
///
/// The data is demodulated by `e^{-i t0 x}` and paired with the normalized
/// Fejér kernel of half-bandwidth λ at every probed shift `h`; the maxima
/// of `|average|` over each dyadic window decide the verdict.
pub fn classify_boundary_point(
    f: &SampledFunction,
    t0: f64,
    lambda: f64,
    windows: &DyadicWindows,
) -> Result<BoundaryClassification> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let required = 2.0 * windows.h_max();
    if windows.count < MIN_WINDOWS || required > f.xmax() {
        return Err(Error::InsufficientWindows {
            needed: windows.count.max(MIN_WINDOWS),
            xmax: f.xmax(),
            required,
        });
    }
    let dx = f.dx();
    let g: Vec<Complex64> = f
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| z * Complex64::from_polar(1.0, -t0 * i as f64 * dx))
        .collect();
    let kernel = fejer_kernel(lambda, 0.0, true);

    let mut probes: Vec<(usize, usize)> = Vec::new();
    let mut bounds = Vec::new();
    for m in 0..windows.count {
        let lo = windows.h0 * 2f64.powi(m as i32);
        let hi = 2.0 * lo;
        bounds.push((lo, hi));
        let step = (lo / 16.0).min(PI / (4.0 * lambda));
        let n = ((hi - lo) / step).ceil() as usize;
        let mut last = usize::MAX;
        for i in 0..=n {
            let h = (lo + i as f64 * step).min(hi);
            let idx = f.index_of(h);
            if idx != last {
                probes.push((m, idx));
                last = idx;
            }
        }
    }
    let max_idx = probes.iter().map(|p| p.1).max().unwrap_or(0);
    let kern: Vec<f64> = (0..=max_idx)
        .map(|j| kernel.profile(j as f64 * dx))
        .collect();
    let values: Vec<f64> = probes
        .par_iter()
        .map(|&(_, idx)| symmetric_average(&g, idx, idx, &kern, dx).norm())
        .collect();

    let mut stats: Vec<WindowStat> = bounds
        .iter()
        .map(|&(h_lo, h_hi)| WindowStat {
            h_lo,
            h_hi,
            max_abs: 0.0,
        })
        .collect();
    for (&(m, _), &v) in probes.iter().zip(&values) {
        stats[m].max_abs = stats[m].max_abs.max(v);
    }
    let maxima: Vec<f64> = stats.iter().map(|s| s.max_abs).collect();
    Ok(BoundaryClassification {
        verdict: verdict_from_maxima(&maxima),
        t0,
        lambda,
        avg_stats: probes
            .iter()
            .zip(&values)
            .map(|(&(_, idx), &v)| (idx as f64 * dx, v))
            .collect(),
        windows: stats,
        trend: dyadic_trend(&maxima),
    })
}
