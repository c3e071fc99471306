//! Special functions on the positive real axis.
//!
//! Γ is evaluated with a Lanczos approximation (g = 7, nine coefficients).
//! Polygamma functions shift the argument up to `y >= 10` by recurrence and
//! finish with the Stirling-type asymptotic series. The derivatives of
//! `1/Γ` follow from `f' = -ψ₀ f` by Leibniz' rule.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest derivative order accepted by [`recip_gamma_derivs`].
pub const MAX_RECIP_GAMMA_ORDER: usize = 12;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Even-index Bernoulli numbers B_2 .. B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const ASYMPTOTIC_SHIFT: f64 = 10.0;

fn check_positive(function: &'static str, y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            arg: y,
            reason: "requires a finite y > 0",
        })
    }
}

/// Lanczos sum and `w = y + g - 1/2` for `y >= 1/2`.
fn lanczos_parts(y: f64) -> (f64, f64) {
    let x = y - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    (sum, x + LANCZOS_G + 0.5)
}

/// Natural logarithm of Γ(y) for y > 0.
pub fn ln_gamma(y: f64) -> Result<f64> {
    check_positive("ln_gamma", y)?;
    if y < 0.5 {
        return Ok(ln_gamma(y + 1.0)? - y.ln());
    }
    let (sum, w) = lanczos_parts(y);
    Ok(0.5 * (2.0 * PI).ln() + (y - 0.5) * w.ln() - w + sum.ln())
}

/// Γ(y) for y > 0.
pub fn gamma(y: f64) -> Result<f64> {
    check_positive("gamma", y)?;
    if y < 0.5 {
        // Γ(y) = Γ(y+1)/y keeps the Lanczos sum on its accurate range.
        return Ok(gamma(y + 1.0)? / y);
    }
    if y > 20.0 {
        return Ok(ln_gamma(y)?.exp());
    }
    let (sum, w) = lanczos_parts(y);
    Ok((2.0 * PI).sqrt() * w.powf(y - 0.5) * (-w).exp() * sum)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Digamma ψ₀(y) for y > 0.
pub fn digamma(y: f64) -> Result<f64> {
    polygamma(0, y)
}

/// m-th derivative of the digamma function at y > 0.
pub fn polygamma(m: usize, y: f64) -> Result<f64> {
    check_positive("polygamma", y)?;
    // ψ^(m)(y) = ψ^(m)(y+1) - (-1)^m m! / y^(m+1)
    let m_fact = factorial(m);
    let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut shift = 0.0;
    let mut z = y;
    while z < ASYMPTOTIC_SHIFT {
        shift -= sign_m * m_fact / z.powi(m as i32 + 1);
        z += 1.0;
    }
    Ok(shift + polygamma_asymptotic(m, z))
}

fn polygamma_asymptotic(m: usize, z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    if m == 0 {
        let mut acc = z.ln() - 0.5 * inv;
        let mut pow = inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_k = 2.0 * (k + 1) as f64;
            acc -= b / two_k * pow;
            pow *= inv2;
        }
        return acc;
    }
    // (-1)^(m+1) [ (m-1)!/z^m + m!/(2 z^(m+1)) + Σ B_2k (2k+m-1)!/((2k)! z^(2k+m)) ]
    let zm = inv.powi(m as i32);
    let mut acc = factorial(m - 1) * zm + 0.5 * factorial(m) * zm * inv;
    let mut pow = zm * inv2;
    // ratio (2k+m-1)!/(2k)! built incrementally
    let mut ratio = factorial(m + 1) / 2.0; // k = 1: (m+1)!/2!
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k1 = (k + 1) as f64;
        if k > 0 {
            // from k to k+1: multiply by (2k+m)(2k+m+1)/((2k+1)(2k+2)) with k = k1-1
            let kk = k1 - 1.0;
            ratio *= (2.0 * kk + m as f64) * (2.0 * kk + m as f64 + 1.0)
                / ((2.0 * kk + 1.0) * (2.0 * kk + 2.0));
        }
        acc += b * ratio * pow;
        pow *= inv2;
    }
    if m % 2 == 1 {
        acc
    } else {
        -acc
    }
}

/// Values D_0(ω), …, D_J(ω) of the derivatives of `1/Γ` at ω.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReciprocalGammaDerivs {
    pub omega: f64,
    pub values: Vec<f64>,
}

impl ReciprocalGammaDerivs {
    pub fn get(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn jmax(&self) -> usize {
        self.values.len() - 1
    }
}

/// D_j(ω) = (d/dy)^j (1/Γ(y)) at y = ω for j = 0..=jmax.
///
/// Uses `f^(j+1) = -Σ_{i<=j} C(j,i) ψ^(i)(ω) f^(j-i)`. The recurrence only
/// reads earlier entries, so a longer table extends a shorter one bit-for-bit.
pub fn recip_gamma_derivs(omega: f64, jmax: usize) -> Result<ReciprocalGammaDerivs> {
    check_positive("recip_gamma_derivs", omega)?;
    if jmax > MAX_RECIP_GAMMA_ORDER {
        return Err(Error::OrderCap {
            requested: jmax,
            cap: MAX_RECIP_GAMMA_ORDER,
        });
    }
    let psi: Vec<f64> = (0..jmax)
        .map(|i| polygamma(i, omega))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(jmax + 1);
    values.push(1.0 / gamma(omega)?);
    for j in 0..jmax {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for i in 0..=j {
            acc += binom * psi[i] * values[j - i];
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
        values.push(-acc);
    }
    Ok(ReciprocalGammaDerivs { omega, values })
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // ζ(2..7); odd values to 17 digits from standard tables.
    const ZETA: [f64; 6] = [
        1.644_934_066_848_226_4,
        1.202_056_903_159_594_3,
        1.082_323_233_711_138_2,
        1.036_927_755_143_369_9,
        1.017_343_061_984_449_1,
        1.008_349_277_381_922_8,
    ];

    #[test]
    fn gamma_small_integers_and_half() {
        assert_relative_eq!(gamma(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(2.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma(1.5).unwrap(), 0.5 * PI.sqrt(), max_relative = 1e-13);
        // Γ(1/4) = 3.6256099082219083119...
        assert_relative_eq!(
            gamma(0.25).unwrap(),
            3.625_609_908_221_908_3,
            max_relative = 1e-13
        );
    }

    #[test]
    fn gamma_agrees_with_stirling_series_at_large_argument() {
        // independent route: Stirling series with five correction terms
        for &y in &[12.5_f64, 17.0, 30.25] {
            let inv = 1.0 / y;
            let series = 1.0 + inv / 12.0 + inv * inv / 288.0
                - 139.0 * inv.powi(3) / 51840.0
                - 571.0 * inv.powi(4) / 2_488_320.0
                + 163_879.0 * inv.powi(5) / 209_018_880.0;
            let stirling = (2.0 * PI / y).sqrt() * (y / std::f64::consts::E).powf(y) * series;
            assert_relative_eq!(gamma(y).unwrap(), stirling, max_relative = 1e-9);
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(matches!(gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(gamma(-1.5), Err(Error::Domain { .. })));
        assert!(polygamma(2, -0.1).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ln_gamma_consistent_with_gamma() {
        for &y in &[0.3, 1.0, 2.7, 9.9] {
            assert_relative_eq!(
                ln_gamma(y).unwrap().exp(),
                gamma(y).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn polygamma_at_one_matches_zeta_values() {
        assert_relative_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, max_relative = 1e-12);
        for m in 1..=6 {
            let expected = if m % 2 == 1 { 1.0 } else { -1.0 } * factorial(m) * ZETA[m - 1];
            assert_relative_eq!(polygamma(m, 1.0).unwrap(), expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn polygamma_at_half_matches_zeta_values() {
        let expected0 = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert_relative_eq!(digamma(0.5).unwrap(), expected0, max_relative = 1e-12);
        for m in 1..=6 {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            let expected = sign * factorial(m) * (2f64.powi(m as i32 + 1) - 1.0) * ZETA[m - 1];
            assert_relative_eq!(polygamma(m, 0.5).unwrap(), expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn digamma_recurrence_example() {
        assert_relative_eq!(
            digamma(2.0).unwrap(),
            1.0 - EULER_GAMMA,
            max_relative = 1e-12
        );
    }

    #[test]
    fn polygamma_matches_finite_difference_of_lower_order() {
        // ψ^(m) ≈ derivative of ψ^(m-1) with a 4th-order central stencil
        let h = 1e-3;
        for m in 1..=4 {
            for &y in &[0.25, 0.8, 2.5, 7.0] {
                let f = |x: f64| polygamma(m - 1, x).unwrap();
                let fd = (f(y - 2.0 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2.0 * h))
                    / (12.0 * h);
                let v = polygamma(m, y).unwrap();
                assert!(
                    (fd - v).abs() <= 1e-7 * (1.0 + v.abs()),
                    "m={m} y={y}: {fd} vs {v}"
                );
            }
        }
        // ψ₀ against the derivative of ln Γ
        for &y in &[0.4, 1.3, 5.5] {
            let f = |x: f64| ln_gamma(x).unwrap();
            let fd =
                (f(y - 2.0 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2.0 * h)) / (12.0 * h);
            assert!((fd - digamma(y).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn recip_gamma_examples() {
        let d = recip_gamma_derivs(2.0, 0).unwrap();
        assert_eq!(d.values.len(), 1);
        assert_relative_eq!(d.values[0], 1.0, max_relative = 1e-14);
        let d = recip_gamma_derivs(1.0, 1).unwrap();
        assert_relative_eq!(d.values[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(d.values[1], EULER_GAMMA, max_relative = 1e-12);
    }

    #[test]
    fn recip_gamma_second_derivative_at_one() {
        // (1/Γ)''(1) = γ² - π²/6 from the Taylor series of 1/Γ(1+z)
        let d = recip_gamma_derivs(1.0, 2).unwrap();
        let expected = EULER_GAMMA * EULER_GAMMA - PI * PI / 6.0;
        assert_relative_eq!(d.values[2], expected, max_relative = 1e-11);
    }

    #[test]
    fn recip_gamma_errors() {
        assert!(matches!(
            recip_gamma_derivs(0.0, 2),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            recip_gamma_derivs(1.0, 13),
            Err(Error::OrderCap {
                requested: 13,
                cap: 12
            })
        ));
        assert!(recip_gamma_derivs(1.0, 12).is_ok());
    }

    #[test]
    fn recip_gamma_prefix_stability() {
        for &w in &[0.25, 1.0, 3.0] {
            for j in 0..MAX_RECIP_GAMMA_ORDER {
                let a = recip_gamma_derivs(w, j).unwrap();
                let b = recip_gamma_derivs(w, j + 1).unwrap();
                for k in 0..=j {
                    assert_eq!(a.values[k].to_bits(), b.values[k].to_bits());
                }
            }
        }
    }

    #[test]
    fn d0_times_gamma_is_one() {
        let mut y = 0.25;
        while y <= 10.0 {
            let d = recip_gamma_derivs(y, 0).unwrap();
            assert_relative_eq!(d.values[0] * gamma(y).unwrap(), 1.0, max_relative = 1e-12);
            y += 0.125;
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
