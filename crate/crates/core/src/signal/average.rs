use super::kernel::TestKernel;
use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::quad::simpson;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Value of `∫ f(x+h)ψ(x)dx` together with the window actually integrated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AverageEstimate {
    #[serde(with = "crate::complex_serde")]
    pub value: Complex64,
    /// Half-width `W` of the symmetric window `[-W, W]`.
    pub window: f64,
    /// `max|f| · ∫_{|x|>W}|ψ|`.
    pub tail_bound: f64,
}

/// Grid offsets `j` so that `h + j·dx` covers the symmetric window around
/// the grid node nearest to `h`.
pub(crate) fn window_half_len(f: &SampledFunction, hidx: usize) -> usize {
    hidx.min(f.len() - 1 - hidx)
}

/// `Σ_j w_j g[hidx + j] kern[|j|]` by Simpson over `j ∈ [-J, J]`.
pub(crate) fn symmetric_average(
    g: &[Complex64],
    hidx: usize,
    half: usize,
    kern: &[f64],
    dx: f64,
) -> Complex64 {
    let n = 2 * half + 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let w = if k == 0 || k == n - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let j = k as isize - half as isize;
        acc += g[(hidx as isize + j) as usize] * (w * kern[j.unsigned_abs()]);
    }
    acc * (dx / 3.0)
}

/// `∫ f(x+h)ψ(x)dx` over the largest symmetric window `[-W, W]` that stays
/// inside the sampled support, `W = min(h, xmax - h)`.
///
/// `h` is snapped to the nearest grid node. The neglected tails are bounded
/// by `max|f|` times the Fejér tail mass; with `tol` set, a larger bound is
/// an error.
pub fn convolution_average(
    f: &SampledFunction,
    k: &TestKernel,
    h: f64,
    tol: Option<f64>,
) -> Result<AverageEstimate> {
    if !(h >= 0.0) || h > f.xmax() {
        return Err(Error::Range(format!("h = {h} outside [0, {}]", f.xmax())));
    }
    let dx = f.dx();
    let hidx = f.index_of(h);
    let half = window_half_len(f, hidx);
    let window = half as f64 * dx;
    let tail_bound = f.max_abs() * k.tail_mass(window);
    if let Some(tol) = tol {
        if tail_bound > tol {
            return Err(Error::TailBound {
                bound: tail_bound,
                tol,
            });
        }
    }
    if half == 0 {
        return Ok(AverageEstimate {
            value: Complex64::new(0.0, 0.0),
            window,
            tail_bound,
        });
    }
    let samples = f.samples();
    let vals: Vec<Complex64> = (0..=2 * half)
        .map(|m| {
            let j = m as isize - half as isize;
            samples[(hidx as isize + j) as usize] * k.eval(j as f64 * dx)
        })
        .collect();
    Ok(AverageEstimate {
        value: simpson(&vals, dx),
        window,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_legendre_composite;
    use crate::signal::kernel::fejer_kernel;

    #[test]
    fn constant_and_ramp() {
        let k = fejer_kernel(1.0, 0.0, true);
        let one = SampledFunction::from_real_fn(|_| 1.0, 0.01, 4000.0).unwrap();
        let avg = convolution_average(&one, &k, 2000.0, Some(1e-3)).unwrap();
        assert!((avg.value.re - 1.0).abs() <= avg.tail_bound + 1e-9);

        let ramp = SampledFunction::from_real_fn(|x| x, 0.01, 4000.0).unwrap();
        let h = 1500.0;
        let avg = convolution_average(&ramp, &k, h, None).unwrap();
        // symmetric window: odd moment cancels, the even part is h·∫_{-W}^{W}ψ
        let inner = 2.0 * gauss_legendre_composite(|x| k.profile(x), 0.0, h, 3000, 8);
        assert!((avg.value.re - h * inner).abs() < 1e-6 * h, "{}", avg.value);
        assert!((avg.value.re - h).abs() < h * k.tail_mass(h));
    }

    #[test]
    fn matched_tone_has_constant_modulus() {
        // kernel at t1 probes frequency -t1 of f; the modulus is ψ̂ there
        let t1 = 0.2;
        let tone =
            SampledFunction::from_fn(move |x| Complex64::from_polar(1.0, t1 * x), 0.02, 3000.0)
                .unwrap();
        let k = fejer_kernel(1.0, t1, true);
        let expected = k.fourier(-t1);
        for &h in &[500.0, 900.0, 1400.0] {
            let avg = convolution_average(&tone, &k, h, None).unwrap();
            assert!(
                (avg.value.norm() - expected).abs() < 2e-3,
                "h={h}: {}",
                avg.value
            );
        }
        let k_neg = fejer_kernel(1.0, -t1, true);
        for &h in &[900.0, 1400.0] {
            let avg = convolution_average(&tone, &k_neg, h, None).unwrap();
            let phase = Complex64::from_polar(1.0, t1 * h);
            assert!((avg.value - phase).norm() < 2e-3);
        }
    }

    #[test]
    fn tail_bound_enforced() {
        let k = fejer_kernel(1.0, 0.0, true);
        let one = SampledFunction::from_real_fn(|_| 1.0, 0.1, 100.0).unwrap();
        assert!(matches!(
            convolution_average(&one, &k, 1.0, Some(1e-3)),
            Err(Error::TailBound { .. })
        ));
        assert!(convolution_average(&one, &k, 101.0, None).is_err());
    }
}
