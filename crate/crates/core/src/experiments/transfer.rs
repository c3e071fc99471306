use crate::asymptotics::{transfer_expansion, AsymptoticExpansion, Remainder, SingularPart};
use crate::complex_serde;
use crate::error::{Error, Result};
use crate::signal::{
    classify_boundary_point, laplace, BoundaryClassification, DyadicWindows, SampledFunction,
    Verdict,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessOptions {
    pub dx: f64,
    pub lambda: f64,
    pub t0s: Vec<f64>,
    /// Imaginary parts of the points `1 + it` where `R(s)` is reported.
    pub transform_probes: Vec<f64>,
}

impl Default for SoundnessOptions {
    fn default() -> Self {
        Self {
            dx: 0.05,
            lambda: 0.25,
            t0s: vec![0.0],
            transform_probes: vec![-1.0, 0.0, 1.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    #[serde(with = "complex_serde")]
    pub s: Complex64,
    /// `L{τ*; s} - (closed-form singular part)(s)`.
    #[serde(with = "complex_serde")]
    pub value: Complex64,
    pub truncation_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub expansion: AsymptoticExpansion,
    pub classifications: Vec<BoundaryClassification>,
    pub residual_transform: Vec<ResidualSample>,
    pub all_pseudofunction: bool,
}

/// Check that the transferred main term `τ*` reproduces the singular part:
/// the residual `τ* - L⁻¹{sp}` must have pseudofunction boundary behaviour
/// at each probed `t0`.
///
/// `τ*` follows the `log₊` convention (log and fractional-power terms vanish
/// on `[0, 1]`); `L⁻¹{sp}` is the exact inverse transform, which includes
/// any non-transfer singular data, so such data shows up in the residual.
pub fn transfer_soundness(
    sp: &SingularPart,
    xmax: f64,
    opts: &SoundnessOptions,
) -> Result<SoundnessReport> {
    if sp.wi.is_some() {
        return Err(Error::InvalidSingularPart(
            "Wiener-Ikehara data present; transfer soundness needs a boundary singular part".into(),
        ));
    }
    let expansion = transfer_expansion(sp, Remainder::LittleO1)?;
    let exact = sp.time_domain()?;
    let main = expansion.clone();
    let tau_star = SampledFunction::from_fn(move |x| main.eval_log_plus(x), opts.dx, xmax)?;
    let main = expansion.clone();
    let residual = SampledFunction::from_fn(
        move |x| {
            if x <= 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                main.eval_log_plus(x) - exact.eval(x)
            }
        },
        opts.dx,
        xmax,
    )?;
    let windows = DyadicWindows::standard(opts.lambda);
    let classifications = opts
        .t0s
        .iter()
        .map(|&t0| classify_boundary_point(&residual, t0, opts.lambda, &windows))
        .collect::<Result<Vec<_>>>()?;
    let mut residual_transform = Vec::new();
    for &t in &opts.transform_probes {
        let s = Complex64::new(1.0, t);
        let est = laplace(&tau_star, s, None)?;
        residual_transform.push(ResidualSample {
            s,
            value: est.value - sp.transform(s),
            truncation_bound: est.truncation_bound,
        });
    }
    let all_pseudofunction = classifications
        .iter()
        .all(|c| c.verdict == Verdict::Pseudofunction);
    Ok(SoundnessReport {
        expansion,
        classifications,
        residual_transform,
        all_pseudofunction,
    })
}
