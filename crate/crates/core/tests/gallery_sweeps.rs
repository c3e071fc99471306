use num_complex::Complex64;
use tauberian_lab::experiments::{finite_form_experiment, transfer_soundness, SoundnessOptions};
use tauberian_lab::gallery::Gallery;
use tauberian_lab::quad::simpson;
use tauberian_lab::signal::{
    classify_boundary_point, convolution_average, fejer_kernel, parseval_crosscheck,
    partial_spectral_integral_sup, DyadicWindows, SampledFunction,
};
use tauberian_lab::taubcheck::{
    check_boundedly_decreasing, check_slowly_decreasing, check_t2_condition,
    check_very_slowly_decreasing,
};

#[test]
fn expected_verdicts() {
    for e in Gallery::builtin().entries {
        if e.expected.is_empty() {
            continue;
        }
        let f = e.sample().unwrap();
        for ev in &e.expected {
            let w = DyadicWindows::standard(ev.lambda);
            let got = classify_boundary_point(&f, ev.t0, ev.lambda, &w).unwrap();
            assert_eq!(
                got.verdict, ev.verdict,
                "{} at t0={} lambda={}",
                e.name, ev.t0, ev.lambda
            );
        }
    }
}

#[test]
fn parseval_gap_across_gallery() {
    let k = fejer_kernel(1.0, 0.0, true);
    let mut worst = (0.0f64, String::new());
    for e in Gallery::builtin().entries {
        let f = e.sample_on(0.05, 200.0).unwrap();
        for sigma in [1.0, 0.5, 0.1] {
            for h in [0.0, 10.0, 100.0] {
                let p = parseval_crosscheck(&f, &k, h, sigma).unwrap();
                if p.gap > worst.0 {
                    worst = (p.gap, format!("{} sigma={sigma} h={h}", e.name));
                }
            }
        }
    }
    assert!(worst.0 <= 1e-5, "gap {:.2e} at {}", worst.0, worst.1);
}

#[test]
fn transfer_soundness_across_gallery() {
    for e in Gallery::builtin().entries {
        let Some(sp) = &e.singular_part else { continue };
        let r = transfer_soundness(sp, e.grid.xmax, &SoundnessOptions::default()).unwrap();
        assert!(r.all_pseudofunction, "{}: {:?}", e.name, r.classifications);
    }
}

#[test]
fn finite_form_never_exceeds_bound() {
    for e in Gallery::builtin().entries {
        let Some(ff) = e.finite_form else { continue };
        let rho = e.sample().unwrap();
        let r = finite_form_experiment(&rho, ff.rho_hat0, ff.lambda).unwrap();
        assert!(r.within_bound, "{}: {r:?}", e.name);
        if !r.rho_decays {
            assert!(r.measured_limsup <= 1.05 * r.bound);
        }
    }
}

#[test]
fn implication_chain() {
    let x0 = 100.0;
    for e in Gallery::builtin().entries {
        let f = e.sample_on(0.01, 400.0).unwrap();
        if !f.is_real() {
            continue;
        }
        let v = f.real_parts();
        let nondecreasing = v[(x0 / f.dx()) as usize..].windows(2).all(|w| w[1] >= w[0]);
        if nondecreasing || check_t2_condition(&f, 0.0, x0).unwrap() {
            let m = check_boundedly_decreasing(&f, 1.0, x0).unwrap();
            assert!(m <= 1e-12, "{}: M = {m}", e.name);
        }
        let tol = 1e-9;
        let grid = [x0 / 2.0, x0];
        let very = check_very_slowly_decreasing(&f, 1.0, &grid, tol).unwrap();
        if very.holds {
            for eps in [2.0 * tol, 1e-3, 0.1, 1.0] {
                assert!(
                    check_slowly_decreasing(&f, eps, x0).unwrap().holds,
                    "{} eps={eps}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn fejer_kernel_is_band_limited() {
    let (lambda, t0) = (1.0, 0.7);
    let k = fejer_kernel(lambda, t0, true);
    let reach = 2000.0 / lambda;
    let dx = 0.02;
    let n = (2.0 * reach / dx) as usize;
    let ft = |t: f64| {
        let vals: Vec<Complex64> = (0..=n)
            .map(|i| {
                let x = -reach + i as f64 * dx;
                k.eval(x) * Complex64::from_polar(1.0, -t * x)
            })
            .collect();
        simpson(&vals, dx)
    };
    let peak = ft(t0).norm();
    assert!((peak - 1.0).abs() < 1e-3);
    for off in [1.002, 1.1, 1.5, 2.0, 3.0] {
        for side in [-1.0, 1.0] {
            let t = t0 + side * off * lambda;
            assert!(ft(t).norm() <= 1e-3 * peak, "t = {t}");
        }
    }
    // inside the band the triangle is reproduced
    assert!((ft(t0 + 0.5).norm() - 0.5).abs() < 1e-3);
}

/// `τ = Σ_j e^{i t_j x} cos(ℓ_j x / 4)`: spectrum inside `[t_j - ℓ_j/2, t_j + ℓ_j/2]`
/// with bounded partial integrals at each `t_j`. The ratio of the measured
/// limsup of the averages to `M·‖kernel‖₁·Σℓ_j` should stay below one fitted
/// constant as the configuration changes.
#[test]
fn covering_bound_constant_is_configuration_free() {
    let (dx, xmax) = (0.05, 1000.0);
    let k = fejer_kernel(4.0, 0.0, true);
    let centres = [-2.0, 0.5, 2.5];
    let mut ratios = Vec::new();
    for n in 1..=3 {
        for ell in [1.0, 0.5, 0.25] {
            let ts: Vec<f64> = centres[..n].to_vec();
            let ts2 = ts.clone();
            let f = SampledFunction::from_fn(
                move |x| {
                    ts2.iter()
                        .map(|&t| Complex64::from_polar((0.25 * ell * x).cos(), t * x))
                        .sum()
                },
                dx,
                xmax,
            )
            .unwrap();
            let m = ts
                .iter()
                .map(|&t| partial_spectral_integral_sup(&f, t, xmax).unwrap())
                .fold(0.0, f64::max);
            let mut measured = 0.0f64;
            let mut h = 200.0;
            while h <= 400.0 {
                measured = measured.max(convolution_average(&f, &k, h, None).unwrap().value.norm());
                h += 0.25;
            }
            let scale = m * k.integral() * ell * n as f64;
            ratios.push(measured / scale);
        }
    }
    let c_fit = ratios.iter().copied().fold(0.0, f64::max);
    let c_min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    println!("fitted constant {c_fit:.4}, spread {:.3}", c_fit / c_min);
    assert!(c_fit < 1.0, "fitted constant {c_fit}");
    assert!(c_fit / c_min < 2.0, "ratios {ratios:?}");
}

#[test]
fn every_entry_samples_on_its_grid() {
    for e in Gallery::builtin().entries {
        let f = e.sample().unwrap();
        assert!(
            f.samples()
                .iter()
                .all(|z| z.re.is_finite() && z.im.is_finite()),
            "{}",
            e.name
        );
    }
}
