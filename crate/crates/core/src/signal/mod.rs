//! Sampled functions, Fejér test kernels, Laplace quadrature, convolution
//! averages and the boundary-behaviour classifier.
//!
//! Fourier convention: `ψ̂(t) = ∫ψ(x)e^{-itx}dx`.

mod average;
mod classify;
mod kernel;
mod sampled;
mod transform;

pub use average::{convolution_average, AverageEstimate};
pub use classify::{
    classify_boundary_point, dyadic_trend, verdict_from_maxima, BoundaryClassification,
    DyadicWindows, Verdict, WindowStat, BOUNDED_RATIO, DECAY_RATIO, MIN_WINDOWS, NOISE_FLOOR,
};
pub use kernel::{fejer_kernel, fejer_phi, KernelBase, TestKernel};
pub use sampled::{Evaluator, SampledFunction, StieltjesFunction};
pub use transform::{
    laplace, parseval_crosscheck, partial_spectral_integral_sup, partial_spectral_integrals,
    stieltjes_laplace, Estimate, ParsevalCheck,
};
