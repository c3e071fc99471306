use super::{dyadic_growth, GrowthSurrogate};
use crate::error::{Error, Result};
use crate::signal::{
    classify_boundary_point, partial_spectral_integrals, BoundaryClassification, DyadicWindows,
    SampledFunction, Verdict,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditOptions {
    /// Probe frequencies off `E`; empty means `t ± 3λ` for each `t ∈ E`.
    pub off_probes: Vec<f64>,
    /// Frequencies `t_n` of the removed simple poles.
    pub pole_frequencies: Vec<f64>,
    /// Number of nested prefixes in the boundedness surrogate.
    pub levels: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            off_probes: Vec::new(),
            pole_frequencies: Vec::new(),
            levels: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalPoint {
    pub t: f64,
    /// `sup_{x <= xmax} |∫₀^x f(u)e^{-itu}du|`.
    pub m_t: f64,
    pub growth: GrowthSurrogate,
    pub classification: BoundaryClassification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub lambda: f64,
    pub points: Vec<ExceptionalPoint>,
    pub off_e: Vec<BoundaryClassification>,
    /// Pseudofunction verdict at every probe off `E`.
    pub hypothesis_i: bool,
    /// Partial integrals bounded (surrogate) at every point of `E`.
    pub hypothesis_ii: bool,
    /// `E` avoids the pole frequencies.
    pub hypothesis_iii: bool,
    /// Pseudofunction verdict everywhere probed, including `E`.
    pub conclusion: bool,
}

/// Per-point audit of the exceptional-set hypotheses on a finite `E`.
///
/// Boundedness of the partial integrals is judged on nested prefixes
/// `[0, xmax/2^k]`: each doubling may raise the sup by at most the bounded
/// ratio of the classifier. Pseudofunction behaviour off `E` is checked at
/// finitely many probe frequencies only.
pub fn exceptional_set_audit(
    f: &SampledFunction,
    e: &[f64],
    lambda: f64,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let windows = DyadicWindows::standard(lambda);
    let mut points = Vec::with_capacity(e.len());
    for &t in e {
        let partial = partial_spectral_integrals(f, t);
        let abs: Vec<f64> = partial.iter().map(|z| z.norm()).collect();
        points.push(ExceptionalPoint {
            t,
            m_t: abs.iter().copied().fold(0.0, f64::max),
            growth: dyadic_growth(&abs, opts.levels),
            classification: classify_boundary_point(f, t, lambda, &windows)?,
        });
    }
    let probes: Vec<f64> = if opts.off_probes.is_empty() {
        e.iter()
            .flat_map(|&t| [t - 3.0 * lambda, t + 3.0 * lambda])
            .collect()
    } else {
        opts.off_probes.clone()
    };
    let off_e = probes
        .iter()
        .map(|&t| classify_boundary_point(f, t, lambda, &windows))
        .collect::<Result<Vec<_>>>()?;
    let pf = |c: &BoundaryClassification| c.verdict == Verdict::Pseudofunction;
    let hypothesis_i = off_e.iter().all(pf);
    let hypothesis_ii = points.iter().all(|p| p.growth.bounded);
    let hypothesis_iii = !e
        .iter()
        .any(|t| opts.pole_frequencies.iter().any(|p| (p - t).abs() < 1e-12));
    let conclusion = hypothesis_i && points.iter().all(|p| pf(&p.classification));
    Ok(AuditReport {
        lambda,
        points,
        off_e,
        hypothesis_i,
        hypothesis_ii,
        hypothesis_iii,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn zero_function_passes() {
        let f = SampledFunction::zeros(0.05, 600.0).unwrap();
        let r = exceptional_set_audit(&f, &[0.0], 1.0, &AuditOptions::default()).unwrap();
        assert_eq!(r.points[0].m_t, 0.0);
        assert!(r.hypothesis_i && r.hypothesis_ii && r.hypothesis_iii && r.conclusion);
    }

    #[test]
    fn pure_tone_fails_partial_integral_bound() {
        let f = SampledFunction::from_fn(|x| Complex64::from_polar(1.0, x), 0.05, 600.0).unwrap();
        let r = exceptional_set_audit(&f, &[1.0], 1.0, &AuditOptions::default()).unwrap();
        assert!(!r.hypothesis_ii);
        assert!((r.points[0].growth.slope - 1.0).abs() < 0.05);
        assert!((r.points[0].m_t - 600.0).abs() < 1e-6);
    }

    #[test]
    fn pole_frequency_in_e_violates_third_hypothesis() {
        let f = SampledFunction::zeros(0.05, 600.0).unwrap();
        let opts = AuditOptions {
            pole_frequencies: vec![2.0],
            ..Default::default()
        };
        let r = exceptional_set_audit(&f, &[2.0], 1.0, &opts).unwrap();
        assert!(!r.hypothesis_iii);
    }
}
