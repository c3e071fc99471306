use super::{dyadic_growth, GrowthSurrogate};
use crate::asymptotics::{wiener_ikehara_mainterm, AsymptoticExpansion, SingularPart};
use crate::error::{Error, Result};
use crate::quad::cumulative_simpson;
use crate::signal::StieltjesFunction;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerIkeharaOptions {
    pub dx: f64,
    pub xmax: f64,
    /// Frequencies `t` for the partial integrals `∫₀^x e^{-αu-itu}dS(u)`.
    pub probes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationWindow {
    pub x_lo: f64,
    pub x_hi: f64,
    pub sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeIntegral {
    pub t: f64,
    pub sup: f64,
    pub growth: GrowthSurrogate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerIkeharaReport {
    pub alpha: f64,
    pub expansion: AsymptoticExpansion,
    /// `sup |e^{-αx}S(x) - e^{-αx}·(main term)|` on `[xmax/2^{k+1}, xmax/2^k]`,
    /// increasing in x.
    pub deviation_windows: Vec<DeviationWindow>,
    /// Deviation on the last window.
    pub sup_deviation: f64,
    /// Partial-integral checks, at the supplied probe frequencies only.
    pub probe_integrals: Vec<ProbeIntegral>,
}

/// Compare `e^{-αx}S(x)` with the α-normalized Wiener–Ikehara main term
/// and measure the partial integrals of `e^{-αu}dS(u)` at probe
/// frequencies.
pub fn wiener_ikehara_experiment(
    s: &StieltjesFunction,
    sp: &SingularPart,
    opts: &WienerIkeharaOptions,
) -> Result<WienerIkeharaReport> {
    let expansion = wiener_ikehara_mainterm(sp)?;
    let alpha = sp.wi.as_ref().ok_or(Error::MissingWienerIkehara)?.alpha;
    let cum = s.cumulative(opts.dx, opts.xmax)?;
    let n = cum.len();
    let dx = opts.dx;
    let deviation: Vec<f64> = cum
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let x = i as f64 * dx;
            let main: Complex64 = expansion
                .terms
                .iter()
                .map(|t| t.coeff * Complex64::from_polar(1.0, t.freq * x))
                .sum();
            (z * (-alpha * x).exp() - main).norm()
        })
        .collect();
    let mut deviation_windows = Vec::new();
    for k in (0..4).rev() {
        let hi = (n - 1) >> k;
        let lo = hi / 2;
        deviation_windows.push(DeviationWindow {
            x_lo: lo as f64 * dx,
            x_hi: hi as f64 * dx,
            sup: deviation[lo..=hi].iter().copied().fold(0.0, f64::max),
        });
    }
    let sup_deviation = deviation_windows[deviation_windows.len() - 1].sup;

    let mut probe_integrals = Vec::new();
    for &t in &opts.probes {
        let rate = Complex64::new(alpha, t);
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        let (pts, ms) = (s.jump_points(), s.jump_masses());
        let mut acc = Complex64::new(0.0, 0.0);
        let mut k = 0;
        for (i, v) in values.iter_mut().enumerate() {
            let x = i as f64 * dx;
            while k < pts.len() && pts[k] <= x + 1e-12 * dx {
                acc += ms[k] * (-rate * pts[k]).exp();
                k += 1;
            }
            *v = acc;
        }
        if let Some(d) = s.density() {
            let weighted: Vec<Complex64> = d
                .samples()
                .iter()
                .enumerate()
                .map(|(i, z)| z * (-rate * (i as f64 * d.dx())).exp())
                .collect();
            let c = cumulative_simpson(&weighted, d.dx());
            for (i, v) in values.iter_mut().enumerate() {
                *v += c[i.min(c.len() - 1)];
            }
        }
        let abs: Vec<f64> = values.iter().map(|z| z.norm()).collect();
        probe_integrals.push(ProbeIntegral {
            t,
            sup: abs.iter().copied().fold(0.0, f64::max),
            growth: dyadic_growth(&abs, 4),
        });
    }
    Ok(WienerIkeharaReport {
        alpha,
        expansion,
        deviation_windows,
        sup_deviation,
        probe_integrals,
    })
}
