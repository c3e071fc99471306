//! `tauberian-lab`: batch front end for the numerical laboratory.
//!
//! Exit codes: 0 success, 1 failed acceptance criterion, 2 usage, parse or
//! library error. Errors go to stderr as `{"error": {"kind", "message"}}`.

mod fixtures;
mod output;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fixtures::{load_fixture, load_singular_part, load_stieltjes, CliError, CliResult, Fixture};
use output::Output;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use svg::Plot;
use tauberian_lab::acceptance::{criteria, run_suite, Fault, SuiteOptions};
use tauberian_lab::asymptotics::{
    eval_expansion, transfer_expansion, wiener_ikehara_mainterm, AsymptoticExpansion, Remainder,
};
use tauberian_lab::experiments::{
    exceptional_set_audit, fejer_integral_table_with_tol, power_series_suite,
    wiener_ikehara_experiment, AuditOptions, CoefficientSequence, WienerIkeharaOptions,
};
use tauberian_lab::signal::{classify_boundary_point, DyadicWindows};
use tauberian_lab::taubcheck::{
    check_boundedly_decreasing, check_slowly_decreasing, check_t2_condition,
    check_very_slowly_decreasing, oscillation_modulus, smooth_representation, OscillationModulus,
    SlowDecrease, VerySlowProfile,
};

#[derive(Parser)]
#[command(
    name = "tauberian-lab",
    version,
    about = "Complex Tauberian numerics: transfer maps, boundary classification, Tauberian checks"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Right end of the sampling grid
    #[arg(long, global = true)]
    xmax: Option<f64>,
    /// Grid step
    #[arg(long, global = true)]
    dx: Option<f64>,
    /// Half-bandwidth of the Fejér test kernel
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Boundary frequency
    #[arg(long, global = true)]
    t0: Option<f64>,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Print JSON on stdout instead of a text summary
    #[arg(long, global = true)]
    json: bool,
    /// Quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Fixture registry to use instead of the built-in one
    #[arg(long, global = true)]
    gallery: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RemainderArg {
    LittleO,
    BigO,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    #[value(alias = "dj")]
    CorruptDj,
}

#[derive(Subcommand)]
enum Cmd {
    /// Transfer a singular-part JSON file to its asymptotic expansion
    Transfer {
        #[arg(value_name = "SINGULAR_JSON")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "little-o")]
        remainder: RemainderArg,
    },
    /// Boundary behaviour of a fixture near i·t0
    Classify { fixture: String },
    /// Tauberian-condition estimators for a fixture
    Taubcheck {
        fixture: String,
        /// Start of the tail window (default xmax/2)
        #[arg(long)]
        x0: Option<f64>,
        /// Tolerance of the slow-decrease test
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Shift length for bounded and very slow decrease
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Mollifier width of the smooth representation
        #[arg(long, default_value_t = 1.0)]
        width: f64,
    },
    /// Wiener–Ikehara experiment for Stieltjes data
    Wi {
        #[arg(value_name = "SINGULAR_JSON")]
        input: PathBuf,
        /// CSV of jumps with header `x,mass`
        #[arg(long)]
        stieltjes: PathBuf,
        /// Probe frequencies for the partial integrals
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        probe: Vec<f64>,
    },
    /// Exceptional-set audit of a fixture
    Audit {
        fixture: String,
        /// Points of the exceptional set E
        #[arg(
            long = "e",
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true
        )]
        e: Vec<f64>,
        /// Known pole frequencies
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        pole: Vec<f64>,
        /// Frequencies off E to classify (default t ± 3λ for t in E)
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        off: Vec<f64>,
    },
    /// Power-series boundary suite for a coefficient CSV (`n,re,im`)
    Powerseries {
        coeffs: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_value = "0"
        )]
        theta: Vec<f64>,
        #[arg(long = "e-angle", value_delimiter = ',', allow_negative_numbers = true)]
        e_angle: Vec<f64>,
    },
    /// Fejér kernel integrals with certified error bounds
    Constants,
    /// Run the acceptance criteria
    Suite {
        /// Module name or criterion id
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Vec<FaultArg>,
    },
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Transfer { .. } => "transfer",
            Cmd::Classify { .. } => "classify",
            Cmd::Taubcheck { .. } => "taubcheck",
            Cmd::Wi { .. } => "wi",
            Cmd::Audit { .. } => "audit",
            Cmd::Powerseries { .. } => "powerseries",
            Cmd::Constants => "constants",
            Cmd::Suite { .. } => "suite",
        }
    }

    /// Common flags the command reads.
    fn accepts(&self) -> &'static [&'static str] {
        match self {
            Cmd::Transfer { .. } => &["xmax", "dx"],
            Cmd::Classify { .. } => &["xmax", "dx", "lambda", "t0"],
            Cmd::Taubcheck { .. } => &["xmax", "dx"],
            Cmd::Wi { .. } => &["xmax", "dx"],
            Cmd::Audit { .. } => &["xmax", "dx", "lambda"],
            Cmd::Powerseries { .. } => &[],
            Cmd::Constants => &["tol"],
            Cmd::Suite { .. } => &[],
        }
    }
}

fn check_flags(cmd: &Cmd, c: &Common) -> CliResult<()> {
    let given = [
        ("xmax", c.xmax.is_some()),
        ("dx", c.dx.is_some()),
        ("lambda", c.lambda.is_some()),
        ("t0", c.t0.is_some()),
        ("tol", c.tol.is_some()),
    ];
    for (flag, set) in given {
        if set && !cmd.accepts().contains(&flag) {
            return Err(CliError::usage(format!(
                "--{flag} has no effect on `{}`",
                cmd.name()
            )));
        }
    }
    if c.gallery.is_some()
        && !matches!(
            cmd,
            Cmd::Classify { .. } | Cmd::Taubcheck { .. } | Cmd::Audit { .. }
        )
    {
        return Err(CliError::usage(format!(
            "--gallery has no effect on `{}`",
            cmd.name()
        )));
    }
    Ok(())
}

enum Status {
    Ok,
    CriterionFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        dir: cli.common.out.clone(),
        json: cli.common.json,
    };
    let result = check_flags(&cli.cmd, &cli.common).and_then(|_| run(&cli.cmd, &cli.common, &out));
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CriterionFailed) => ExitCode::from(1),
        Err(e) => {
            let report = serde_json::json!({
                "error": { "kind": e.kind, "message": e.message }
            });
            eprintln!("{report}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Cmd, c: &Common, out: &Output) -> CliResult<Status> {
    match cmd {
        Cmd::Transfer { input, remainder } => transfer(input, *remainder, c, out),
        Cmd::Classify { fixture } => classify(fixture, c, out),
        Cmd::Taubcheck {
            fixture,
            x0,
            eps,
            delta,
            width,
        } => taubcheck(fixture, *x0, *eps, *delta, *width, c, out),
        Cmd::Wi {
            input,
            stieltjes,
            probe,
        } => wi(input, stieltjes, probe, c, out),
        Cmd::Audit {
            fixture,
            e,
            pole,
            off,
        } => audit(fixture, e, pole, off, c, out),
        Cmd::Powerseries {
            coeffs,
            theta,
            e_angle,
        } => powerseries(coeffs, theta, e_angle, out),
        Cmd::Constants => constants(c, out),
        Cmd::Suite {
            filter,
            inject_fault,
        } => suite(filter.as_deref(), inject_fault, out),
    }
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}

fn xy_csv(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn expansion_text(e: &AsymptoticExpansion) -> String {
    let mut s = String::new();
    let rem = match e.remainder {
        Remainder::LittleO1 => "o(1)",
        Remainder::BigO1 => "O(1)",
    };
    if e.remainder_rate != 0.0 {
        let _ = writeln!(
            s,
            "tau(x) = {} + e^({}·x)·{rem}",
            e.describe(),
            e.remainder_rate
        );
    } else {
        let _ = writeln!(s, "tau(x) = {} + {rem}", e.describe());
    }
    for d in &e.dropped {
        let _ = writeln!(s, "dropped: {} ({})", d.description, d.reason);
    }
    for h in &e.non_transfer {
        let _ = writeln!(
            s,
            "non-transfer singular data: {}/(s - {}i)^{}",
            h.coeff, h.t, h.order
        );
    }
    s
}

fn transfer(input: &Path, remainder: RemainderArg, c: &Common, out: &Output) -> CliResult<Status> {
    let sp = load_singular_part(input)?;
    let xmax = positive("xmax", c.xmax.unwrap_or(100.0))?;
    let dx = positive("dx", c.dx.unwrap_or(0.5))?;
    if xmax <= 1.0 + dx {
        return Err(CliError::usage("--xmax must exceed 1 + dx"));
    }
    let e = if sp.wi.is_some() {
        wiener_ikehara_mainterm(&sp)?
    } else {
        let r = match remainder {
            RemainderArg::LittleO => Remainder::LittleO1,
            RemainderArg::BigO => Remainder::BigO1,
        };
        transfer_expansion(&sp, r)?
    };
    out.write_json("expansion.json", &e)?;
    // samples start past x = 1, where log terms are defined
    let n = ((xmax - 1.0) / dx).floor() as usize;
    let rows = (1..=n)
        .map(|k| {
            let x = 1.0 + k as f64 * dx;
            eval_expansion(&e, x).map(|v| vec![x, v.re, v.im])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let csv = xy_csv("x,re,im", rows.into_iter());
    out.write_csv_and_plot(
        "expansion",
        &csv,
        &Plot {
            title: "main term",
            x: "x",
            ys: &["re", "im"],
            log_y: false,
        },
    )?;
    out.report(&e, &expansion_text(&e))?;
    Ok(Status::Ok)
}

fn fixture(name: &str, c: &Common) -> CliResult<Fixture> {
    if let Some(v) = c.dx {
        positive("dx", v)?;
    }
    if let Some(v) = c.xmax {
        positive("xmax", v)?;
    }
    load_fixture(name, c.gallery.as_deref(), c.dx, c.xmax)
}

fn classify(name: &str, c: &Common, out: &Output) -> CliResult<Status> {
    let fx = fixture(name, c)?;
    let lambda = positive("lambda", c.lambda.unwrap_or(1.0))?;
    let t0 = c.t0.unwrap_or(0.0);
    let r = classify_boundary_point(&fx.f, t0, lambda, &DyadicWindows::standard(lambda))?;
    out.write_json("classification.json", &r)?;
    let mut buf = Vec::new();
    r.write_csv(&mut buf)?;
    let csv = String::from_utf8(buf).map_err(|e| CliError::io(e.to_string()))?;
    out.write_csv_and_plot(
        "classification",
        &csv,
        &Plot {
            title: "|average| against shift",
            x: "h",
            ys: &["abs_avg"],
            log_y: true,
        },
    )?;
    let mut text = format!(
        "{} at t0 = {t0}, lambda = {lambda}: {:?} (trend {:.3})\n",
        fx.name, r.verdict, r.trend
    );
    for w in &r.windows {
        let _ = writeln!(
            text,
            "  h in [{}, {}]: max |avg| = {:.3e}",
            w.h_lo, w.h_hi, w.max_abs
        );
    }
    let expected = fx.entry.iter().flat_map(|e| &e.expected);
    for ev in expected.filter(|ev| ev.t0 == t0 && ev.lambda == lambda) {
        let _ = writeln!(text, "  registry expects {:?}", ev.verdict);
    }
    out.report(&r, &text)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct SmoothSummary {
    width: f64,
    remainder_bound: f64,
    g_bound: f64,
    g_sup: f64,
}

#[derive(Serialize)]
struct TaubcheckReport {
    fixture: String,
    x0: f64,
    psi: OscillationModulus,
    psi_slope_at_zero: f64,
    psi_subadditivity_defect: f64,
    slowly_decreasing: SlowDecrease,
    bounded_decrease_constant: f64,
    very_slowly_decreasing: VerySlowProfile,
    /// `None` for complex data.
    t2_nondecreasing: Option<bool>,
    smooth_representation: Option<SmoothSummary>,
    smooth_representation_error: Option<String>,
}

fn taubcheck(
    name: &str,
    x0: Option<f64>,
    eps: f64,
    delta: f64,
    width: f64,
    c: &Common,
    out: &Output,
) -> CliResult<Status> {
    let fx = fixture(name, c)?;
    let f = &fx.f;
    let x0 = x0.unwrap_or(f.xmax() / 2.0);
    let step = f.dx() * (0.05 / f.dx()).ceil();
    let deltas: Vec<f64> = (1..=40).map(|k| k as f64 * step).collect();
    let psi = oscillation_modulus(f, &deltas, x0)?;
    let (smooth, smooth_err) = match smooth_representation(f, width) {
        Ok(s) => (
            Some(SmoothSummary {
                width: s.width,
                remainder_bound: s.remainder_bound,
                g_bound: s.g_bound,
                g_sup: s.g.max_abs(),
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let r = TaubcheckReport {
        fixture: fx.name.clone(),
        x0,
        psi_slope_at_zero: psi.slope_at_zero(),
        psi_subadditivity_defect: psi.subadditivity_defect(),
        slowly_decreasing: check_slowly_decreasing(f, eps, x0)?,
        bounded_decrease_constant: check_boundedly_decreasing(f, delta, x0)?,
        very_slowly_decreasing: check_very_slowly_decreasing(f, delta, &[x0 / 2.0, x0], 1e-9)?,
        t2_nondecreasing: if f.is_real() {
            Some(check_t2_condition(f, 0.0, x0)?)
        } else {
            None
        },
        smooth_representation: smooth,
        smooth_representation_error: smooth_err,
        psi,
    };
    out.write_json("taubcheck.json", &r)?;
    let csv = xy_csv(
        "delta,psi",
        r.psi
            .deltas
            .iter()
            .zip(&r.psi.psi_values)
            .map(|(d, p)| vec![*d, *p]),
    );
    out.write_csv_and_plot(
        "psi",
        &csv,
        &Plot {
            title: "oscillation modulus",
            x: "delta",
            ys: &["psi"],
            log_y: false,
        },
    )?;
    let mut text = format!("{} on x >= {x0}\n", r.fixture);
    let _ = writeln!(
        text,
        "  Psi'(0+) ~ {:.4e}, subadditivity defect {:.2e}",
        r.psi_slope_at_zero, r.psi_subadditivity_defect
    );
    let _ = writeln!(
        text,
        "  slowly decreasing (eps {eps}): {} (delta {}, worst {:.3e})",
        r.slowly_decreasing.holds,
        r.slowly_decreasing.delta_found,
        r.slowly_decreasing.worst_increment
    );
    let _ = writeln!(
        text,
        "  bounded decrease constant (delta {delta}): {:.4e}",
        r.bounded_decrease_constant
    );
    let _ = writeln!(
        text,
        "  very slowly decreasing: {}",
        r.very_slowly_decreasing.holds
    );
    if let Some(t2) = r.t2_nondecreasing {
        let _ = writeln!(text, "  non-decreasing on the tail: {t2}");
    }
    match (&r.smooth_representation, &r.smooth_representation_error) {
        (Some(s), _) => {
            let _ = writeln!(
                text,
                "  smooth representation (width {}): remainder {:.3e}, sup|g| {:.3e}",
                s.width, s.remainder_bound, s.g_sup
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(text, "  smooth representation: {e}");
        }
        (None, None) => {}
    }
    out.report(&r, &text)?;
    Ok(Status::Ok)
}

fn wi(
    input: &Path,
    stieltjes: &Path,
    probe: &[f64],
    c: &Common,
    out: &Output,
) -> CliResult<Status> {
    let sp = load_singular_part(input)?;
    let s = load_stieltjes(stieltjes)?;
    let opts = WienerIkeharaOptions {
        dx: positive("dx", c.dx.unwrap_or(0.01))?,
        xmax: positive("xmax", c.xmax.unwrap_or(20.0))?,
        probes: probe.to_vec(),
    };
    let r = wiener_ikehara_experiment(&s, &sp, &opts)?;
    out.write_json("wi.json", &r)?;
    let csv = xy_csv(
        "x_lo,x_hi,sup",
        r.deviation_windows
            .iter()
            .map(|w| vec![w.x_lo, w.x_hi, w.sup]),
    );
    out.write_csv_and_plot(
        "deviation",
        &csv,
        &Plot {
            title: "normalized deviation from the main term",
            x: "x_hi",
            ys: &["sup"],
            log_y: true,
        },
    )?;
    let mut text = expansion_text(&r.expansion);
    let _ = writeln!(text, "alpha = {}", r.alpha);
    for w in &r.deviation_windows {
        let _ = writeln!(
            text,
            "  x in [{}, {}]: sup deviation {:.3e}",
            w.x_lo, w.x_hi, w.sup
        );
    }
    for p in &r.probe_integrals {
        let _ = writeln!(
            text,
            "  probe t = {}: sup {:.3e}, bounded {}",
            p.t, p.sup, p.growth.bounded
        );
    }
    out.report(&r, &text)?;
    Ok(Status::Ok)
}

fn audit(
    name: &str,
    e: &[f64],
    pole: &[f64],
    off: &[f64],
    c: &Common,
    out: &Output,
) -> CliResult<Status> {
    let fx = fixture(name, c)?;
    let lambda = positive("lambda", c.lambda.unwrap_or(1.0))?;
    let opts = AuditOptions {
        off_probes: off.to_vec(),
        pole_frequencies: pole.to_vec(),
        ..Default::default()
    };
    let r = exceptional_set_audit(&fx.f, e, lambda, &opts)?;
    out.write_json("audit.json", &r)?;
    let csv = xy_csv(
        "t,m_t,slope",
        r.points.iter().map(|p| vec![p.t, p.m_t, p.growth.slope]),
    );
    out.write_csv_and_plot(
        "audit",
        &csv,
        &Plot {
            title: "sup of partial spectral integrals on E",
            x: "t",
            ys: &["m_t"],
            log_y: false,
        },
    )?;
    let mut text = format!("{} with E = {e:?}, lambda = {lambda}\n", fx.name);
    for p in &r.points {
        let _ = writeln!(
            text,
            "  t = {}: M_t = {:.4e}, bounded {}, {:?}",
            p.t, p.m_t, p.growth.bounded, p.classification.verdict
        );
    }
    let _ = writeln!(
        text,
        "  hypotheses: (i) {} (ii) {} (iii) {}; pseudofunction on E: {}",
        r.hypothesis_i, r.hypothesis_ii, r.hypothesis_iii, r.conclusion
    );
    out.report(&r, &text)?;
    Ok(Status::Ok)
}

fn powerseries(path: &Path, theta: &[f64], e_angle: &[f64], out: &Output) -> CliResult<Status> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let c = CoefficientSequence::read_csv(text.as_bytes()).map_err(|e| CliError::at(path, e))?;
    let r = power_series_suite(&c, theta, e_angle)?;
    out.write_json("powerseries.json", &r)?;
    let csv = xy_csv(
        "n,abs",
        c.coeffs()
            .iter()
            .enumerate()
            .map(|(n, z)| vec![n as f64, z.norm()]),
    );
    out.write_csv_and_plot(
        "coefficients",
        &csv,
        &Plot {
            title: "|c_n|",
            x: "n",
            ys: &["abs"],
            log_y: true,
        },
    )?;
    let mut s = format!(
        "N = {}: coefficients {:?} (trend {:.3})\n",
        r.degree, r.coefficient_verdict, r.coefficient_trend
    );
    for p in &r.partial_sums {
        let _ = writeln!(
            s,
            "  theta = {}: sup partial sum {:.4e}, bounded {}",
            p.theta, p.sup, p.growth.bounded
        );
    }
    for v in &r.convergence {
        let _ = writeln!(
            s,
            "  theta = {}: Abel value {:.6} at r = {}, averaged partial sum {:.6}",
            v.theta, v.abel_value, v.abel_r, v.averaged_partial_sum
        );
    }
    out.report(&r, &s)?;
    Ok(Status::Ok)
}

fn constants(c: &Common, out: &Output) -> CliResult<Status> {
    let tol = c.tol.unwrap_or(1e-9);
    let t = fejer_integral_table_with_tol(tol)?;
    out.write_json("constants.json", &t)?;
    let rows = [
        ("I1", "int_0^4 phi", t.i1),
        ("I2", "int_4^inf phi", t.i2),
        ("I3", "int_0^4 (2-x) phi", t.i3),
        ("I4", "int_4^inf 2 phi", t.i4),
    ];
    let mut csv = String::from("name,integral,value,error_bound\n");
    let mut text = format!("Fejér integrals, tolerance {tol:e}\n");
    for (name, integral, v) in rows {
        let _ = writeln!(csv, "{name},{integral},{},{}", v.value, v.error_bound);
        let _ = writeln!(
            text,
            "  {name} = {integral:<20} {:.9} ± {:.1e}",
            v.value, v.error_bound
        );
    }
    out.write("constants.csv", csv.as_bytes())?;
    out.report(&t, &text)?;
    Ok(Status::Ok)
}

fn suite(filter: Option<&str>, faults: &[FaultArg], out: &Output) -> CliResult<Status> {
    if !criteria().iter().any(|c| c.matches(filter)) {
        return Err(CliError::usage(format!(
            "filter {:?} matches no criterion",
            filter.unwrap_or_default()
        )));
    }
    let opts = SuiteOptions {
        filter: filter.map(str::to_string),
        faults: faults
            .iter()
            .map(|f| match f {
                FaultArg::CorruptDj => Fault::CorruptDj,
            })
            .collect(),
    };
    let r = run_suite(&opts);
    out.write_json("suite.json", &r)?;
    let mut text = String::new();
    for c in &r.results {
        let _ = writeln!(
            text,
            "[{}] criterion {:>2} ({}, {}): {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.module,
            c.title,
            c.detail
        );
    }
    let failed = r.results.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        text,
        "{} of {} criteria passed",
        r.results.len() - failed,
        r.results.len()
    );
    out.report(&r, &text)?;
    Ok(if r.passed {
        Status::Ok
    } else {
        Status::CriterionFailed
    })
}
