use super::{dyadic_growth, GrowthSurrogate};
use crate::complex_serde;
use crate::error::{Error, Result};
use crate::signal::{dyadic_trend, verdict_from_maxima, Verdict, WindowStat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Coefficients `c_0, …, c_N` of `F(z) = Σ c_n z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    coeffs: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("need at least c_0 and c_1".into()));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidInput("coefficients must be finite".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=n).map(f).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest index `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// CSV with header `n,re,im`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "re", "im"])?;
        for (n, c) in self.coeffs.iter().enumerate() {
            out.write_record([
                n.to_string(),
                format!("{:.16e}", c.re),
                format!("{:.16e}", c.im),
            ])?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    /// Rows must list `n = 0, 1, 2, …` in order.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header: Vec<String> = rdr
            .headers()?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        if header != ["n", "re", "im"] {
            return Err(Error::Parse(format!(
                "expected header n,re,im, found {}",
                header.join(",")
            )));
        }
        let mut coeffs = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let field = |k: usize| rec.get(k).unwrap_or("").trim().to_string();
            let n: usize = field(0)
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad index", row + 2)))?;
            if n != row {
                return Err(Error::Parse(format!("row {}: expected n = {row}", row + 2)));
            }
            let parse = |k: usize| -> Result<f64> {
                field(k)
                    .parse()
                    .map_err(|_| Error::Parse(format!("row {}: bad number", row + 2)))
            };
            coeffs.push(Complex64::new(parse(1)?, parse(2)?));
        }
        Self::new(coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientVerdict {
    /// `c_n = o(1)`: boundary pseudofunction.
    LittleO,
    /// `c_n = O(1)` without decay: boundary pseudomeasure only.
    BigO,
    Neither,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialSumStat {
    pub theta: f64,
    /// `sup_{n <= N} |Σ_{k<=n} c_k e^{ikθ}|`.
    pub sup: f64,
    #[serde(with = "complex_serde")]
    pub last: Complex64,
    pub growth: GrowthSurrogate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSample {
    pub theta: f64,
    pub r: f64,
    #[serde(with = "complex_serde")]
    pub value: Complex64,
    /// `|c_N|·r^{N+1}/(1-r)`, the tail if coefficients stay at the last size.
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSurrogate {
    pub theta: f64,
    /// Abel radius `1 - 10/N`.
    pub abel_r: f64,
    #[serde(with = "complex_serde")]
    pub abel_value: Complex64,
    #[serde(with = "complex_serde")]
    pub partial_sum: Complex64,
    /// Mean of the partial sums over `[N/2, N]`.
    #[serde(with = "complex_serde")]
    pub averaged_partial_sum: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeriesReport {
    pub degree: usize,
    pub coefficient_verdict: CoefficientVerdict,
    /// Max `|c_n|` over `[N/2^{k+1}, N/2^k]`, increasing in n.
    pub coefficient_windows: Vec<WindowStat>,
    pub coefficient_trend: f64,
    pub partial_sums: Vec<PartialSumStat>,
    pub radial: Vec<RadialSample>,
    pub convergence: Vec<ConvergenceSurrogate>,
}

/// Radii of the radial samples.
pub const RADIAL_RADII: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

fn rotated_partial_sums(c: &[Complex64], theta: f64) -> Vec<Complex64> {
    let step = Complex64::from_polar(1.0, theta);
    let mut w = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    c.iter()
        .enumerate()
        .map(|(n, &cn)| {
            if n % 1024 == 0 {
                w = Complex64::from_polar(1.0, theta * n as f64);
            }
            acc += cn * w;
            w *= step;
            acc
        })
        .collect()
}

fn eval_series(c: &[Complex64], z: Complex64) -> Complex64 {
    // Horner from the top
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &cn| acc * z + cn)
}

/// Coefficient decay, modulated partial sums on `e_angles`, radial
/// boundary samples and the Abel convergence surrogate on `theta_probes`.
pub fn power_series_suite(
    c: &CoefficientSequence,
    theta_probes: &[f64],
    e_angles: &[f64],
) -> Result<PowerSeriesReport> {
    let coeffs = c.coeffs();
    let big_n = c.degree();
    if big_n < 16 {
        return Err(Error::InvalidInput(
            "need at least 16 coefficients for four dyadic windows".into(),
        ));
    }
    let mut coefficient_windows = Vec::new();
    for k in (0..4).rev() {
        let hi = big_n >> k;
        let lo = hi / 2;
        coefficient_windows.push(WindowStat {
            h_lo: lo as f64,
            h_hi: hi as f64,
            max_abs: coeffs[lo..=hi].iter().map(|z| z.norm()).fold(0.0, f64::max),
        });
    }
    let maxima: Vec<f64> = coefficient_windows.iter().map(|w| w.max_abs).collect();
    let coefficient_verdict = match verdict_from_maxima(&maxima) {
        Verdict::Pseudofunction => CoefficientVerdict::LittleO,
        Verdict::PseudomeasureOnly => CoefficientVerdict::BigO,
        Verdict::Neither => CoefficientVerdict::Neither,
        Verdict::Inconclusive => CoefficientVerdict::Inconclusive,
    };

    let partial_sums = e_angles
        .iter()
        .map(|&theta| {
            let s = rotated_partial_sums(coeffs, theta);
            let abs: Vec<f64> = s.iter().map(|z| z.norm()).collect();
            PartialSumStat {
                theta,
                sup: abs.iter().copied().fold(0.0, f64::max),
                last: s[big_n],
                growth: dyadic_growth(&abs, 4),
            }
        })
        .collect();

    let last_abs = coeffs[big_n].norm();
    let mut radial = Vec::new();
    for &theta in theta_probes {
        for &r in &RADIAL_RADII {
            radial.push(RadialSample {
                theta,
                r,
                value: eval_series(coeffs, Complex64::from_polar(r, theta)),
                tail_estimate: last_abs * r.powi(big_n as i32 + 1) / (1.0 - r),
            });
        }
    }

    let abel_r = 1.0 - 10.0 / big_n as f64;
    let convergence = theta_probes
        .iter()
        .map(|&theta| {
            let s = rotated_partial_sums(coeffs, theta);
            let half = &s[big_n / 2..];
            let mean = half.iter().sum::<Complex64>() / half.len() as f64;
            ConvergenceSurrogate {
                theta,
                abel_r,
                abel_value: eval_series(coeffs, Complex64::from_polar(abel_r, theta)),
                partial_sum: s[big_n],
                averaged_partial_sum: mean,
            }
        })
        .collect();

    Ok(PowerSeriesReport {
        degree: big_n,
        coefficient_verdict,
        coefficient_windows,
        coefficient_trend: dyadic_trend(&maxima),
        partial_sums,
        radial,
        convergence,
    })
}
