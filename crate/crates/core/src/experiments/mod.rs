//! End-to-end harnesses built on the lower modules.

mod audit;
mod fejer;
mod powerseries;
mod transfer;
mod wiener;

pub use audit::{exceptional_set_audit, AuditOptions, AuditReport, ExceptionalPoint};
pub use fejer::{
    fejer_integral_table, fejer_integral_table_with_tol, finite_form_bound, finite_form_experiment,
    CertifiedValue, FejerTable, FiniteFormReport, TAUBERIAN_CONSTANT,
};
pub use powerseries::{
    power_series_suite, CoefficientSequence, CoefficientVerdict, ConvergenceSurrogate,
    PartialSumStat, PowerSeriesReport, RadialSample,
};
pub use transfer::{transfer_soundness, ResidualSample, SoundnessOptions, SoundnessReport};
pub use wiener::{wiener_ikehara_experiment, WienerIkeharaOptions, WienerIkeharaReport};

use crate::signal::{dyadic_trend, BOUNDED_RATIO, NOISE_FLOOR};
use serde::{Deserialize, Serialize};

/// Growth of a running quantity sampled along an index range, measured on
/// nested prefixes `[0, n/2^k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSurrogate {
    /// Prefix sups, shortest prefix first.
    pub prefix_sups: Vec<f64>,
    /// Every doubling of the prefix raises the sup by at most `BOUNDED_RATIO`.
    pub bounded: bool,
    /// Slope of `log₂ sup` per doubling (1 for linear growth).
    pub slope: f64,
}

/// Sups of `|v|` over the prefixes `[0, n/2^k]`, `k = levels-1, …, 0`.
pub fn dyadic_growth(abs_values: &[f64], levels: usize) -> GrowthSurrogate {
    let n = abs_values.len();
    let mut prefix_sups = Vec::with_capacity(levels);
    for k in (0..levels).rev() {
        let end = (n >> k).max(1).min(n);
        prefix_sups.push(abs_values[..end].iter().copied().fold(0.0, f64::max));
    }
    let bounded = prefix_sups
        .windows(2)
        .all(|w| w[1] <= BOUNDED_RATIO * w[0] || w[1] <= NOISE_FLOOR);
    let slope = if prefix_sups.iter().all(|&v| v <= NOISE_FLOOR) {
        0.0
    } else {
        dyadic_trend(&prefix_sups)
    };
    GrowthSurrogate {
        prefix_sups,
        bounded,
        slope,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_surrogate() {
        let linear: Vec<f64> = (0..1024).map(f64::from).collect();
        let g = dyadic_growth(&linear, 5);
        assert!(!g.bounded);
        assert!((g.slope - 1.0).abs() < 0.01);
        let flat = vec![1.0; 1024];
        let g = dyadic_growth(&flat, 5);
        assert!(g.bounded && g.slope.abs() < 1e-12);
        let g = dyadic_growth(&[0.0; 64], 4);
        assert!(g.bounded && g.slope == 0.0);
    }
}
