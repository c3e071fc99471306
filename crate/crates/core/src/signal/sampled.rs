use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::io::{Read, Write};
use std::sync::Arc;

/// Closed-form callback attached to a sampled function.
pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A function on `[0, xmax]` sampled on the uniform grid `x_n = n·dx`.
///
/// Values for `x < 0` are identically zero. The stored `xmax` is always the
/// last grid node, so `len() == floor(xmax/dx) + 1`.
#[derive(Clone)]
pub struct SampledFunction {
    dx: f64,
    samples: Vec<Complex64>,
    evaluator: Option<Evaluator>,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field("dx", &self.dx)
            .field("xmax", &self.xmax())
            .field("len", &self.samples.len())
            .field("evaluator", &self.evaluator.is_some())
            .finish()
    }
}

impl PartialEq for SampledFunction {
    fn eq(&self, other: &Self) -> bool {
        self.dx == other.dx && self.samples == other.samples
    }
}

fn grid_len(dx: f64, xmax: f64) -> Result<usize> {
    if !(dx > 0.0 && dx.is_finite()) {
        return Err(Error::InvalidGrid(format!("step {dx} must be positive")));
    }
    if !(xmax >= dx && xmax.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "xmax {xmax} must be at least one step ({dx})"
        )));
    }
    Ok((xmax / dx + 1e-9).floor() as usize + 1)
}

impl SampledFunction {
    /// Wrap existing samples taken at `n·dx`.
    pub fn new(dx: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::InvalidGrid(format!("step {dx} must be positive")));
        }
        if samples.len() < 2 {
            return Err(Error::InvalidGrid("need at least two samples".into()));
        }
        Ok(Self {
            dx,
            samples,
            evaluator: None,
        })
    }

    /// Sample a closed-form function and keep it as evaluator.
    pub fn from_fn<F>(f: F, dx: f64, xmax: f64) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let n = grid_len(dx, xmax)?;
        let samples = (0..n).map(|i| f(i as f64 * dx)).collect();
        Ok(Self {
            dx,
            samples,
            evaluator: Some(Arc::new(f)),
        })
    }

    pub fn from_real_fn<F>(f: F, dx: f64, xmax: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_fn(move |x| Complex64::new(f(x), 0.0), dx, xmax)
    }

    pub fn zeros(dx: f64, xmax: f64) -> Result<Self> {
        Self::from_fn(|_| Complex64::new(0.0, 0.0), dx, xmax)
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn xmax(&self) -> f64 {
        (self.samples.len() - 1) as f64 * self.dx
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }

    pub fn evaluator(&self) -> Option<&Evaluator> {
        self.evaluator.as_ref()
    }

    /// Value at an arbitrary `x`: the evaluator if present, otherwise linear
    /// interpolation. Zero for `x < 0`; `None` beyond `xmax` without an
    /// evaluator.
    pub fn value_at(&self, x: f64) -> Option<Complex64> {
        if x < 0.0 {
            return Some(Complex64::new(0.0, 0.0));
        }
        if let Some(f) = &self.evaluator {
            return Some(f(x));
        }
        let pos = x / self.dx;
        let i = pos.floor() as usize;
        if i + 1 >= self.samples.len() {
            return (pos <= (self.samples.len() - 1) as f64 + 1e-9)
                .then(|| self.samples[self.samples.len() - 1]);
        }
        let w = pos - i as f64;
        Some(self.samples[i] * (1.0 - w) + self.samples[i + 1] * w)
    }

    /// Grid index of the node closest to `x`, clamped to the grid.
    pub fn index_of(&self, x: f64) -> usize {
        let i = (x / self.dx).round().max(0.0) as usize;
        i.min(self.samples.len() - 1)
    }

    /// Pointwise map `(x, f(x)) ↦ g`; the evaluator is composed when present.
    pub fn map<G>(&self, g: G) -> SampledFunction
    where
        G: Fn(f64, Complex64) -> Complex64 + Send + Sync + Clone + 'static,
    {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, &z)| g(i as f64 * self.dx, z))
            .collect();
        let evaluator = self
            .evaluator
            .clone()
            .map(|f| Arc::new(move |x: f64| g(x, f(x))) as Evaluator);
        SampledFunction {
            dx: self.dx,
            samples,
            evaluator,
        }
    }

    /// `f(x)·e^{iθx}`.
    pub fn modulate(&self, theta: f64) -> SampledFunction {
        self.map(move |x, z| z * Complex64::from_polar(1.0, theta * x))
    }

    /// Drop the closed-form evaluator (analysis then relies on samples only).
    pub fn without_evaluator(mut self) -> SampledFunction {
        self.evaluator = None;
        self
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.im).collect()
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|z| z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// CSV with header `x,re,im`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "re", "im"])?;
        for (i, z) in self.samples.iter().enumerate() {
            out.write_record([fmt_f(self.x(i)), fmt_f(z.re), fmt_f(z.im)])?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    /// Read `x,re,im` rows. The grid must start at 0 and be uniform.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        check_header(rdr.headers()?, &["x", "re", "im"])?;
        let mut xs = Vec::new();
        let mut samples = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let get = |k: usize| -> Result<f64> {
                let field = rec.get(k).unwrap_or("");
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: cannot parse {field:?}", line + 2)))
            };
            xs.push(get(0)?);
            samples.push(Complex64::new(get(1)?, get(2)?));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidGrid("need at least two rows".into()));
        }
        let dx = xs[1] - xs[0];
        if xs[0] != 0.0 || !(dx > 0.0) {
            return Err(Error::InvalidGrid(
                "grid must start at 0 and increase".into(),
            ));
        }
        for (i, &x) in xs.iter().enumerate() {
            if (x - i as f64 * dx).abs() > 1e-9 * dx.max(x.abs()) {
                return Err(Error::InvalidGrid(format!(
                    "row {}: non-uniform grid",
                    i + 2
                )));
            }
        }
        SampledFunction::new(dx, samples)
    }
}

pub(crate) fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn check_header(h: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let got: Vec<&str> = h.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::Parse(format!(
            "expected header {}, found {}",
            expected.join(","),
            got.join(",")
        )));
    }
    Ok(())
}

/// A non-decreasing function given by its jumps and an optional density.
#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesFunction {
    jump_points: Vec<f64>,
    jump_masses: Vec<f64>,
    density: Option<SampledFunction>,
}

impl StieltjesFunction {
    pub fn new(
        jump_points: Vec<f64>,
        jump_masses: Vec<f64>,
        density: Option<SampledFunction>,
    ) -> Result<Self> {
        if jump_points.len() != jump_masses.len() {
            return Err(Error::InvalidInput(
                "jump points and masses differ in length".into(),
            ));
        }
        if jump_points.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidInput(
                "jump points must be finite and >= 0".into(),
            ));
        }
        if jump_points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NotMonotone(
                "jump points must increase strictly".into(),
            ));
        }
        if let Some(i) = jump_masses.iter().position(|&m| !(m >= 0.0)) {
            return Err(Error::NotMonotone(format!(
                "negative mass {} at x = {}",
                jump_masses[i], jump_points[i]
            )));
        }
        if let Some(d) = &density {
            if let Some(z) = d.samples().iter().find(|z| z.re < 0.0 || z.im != 0.0) {
                return Err(Error::NotMonotone(format!("density value {z} is not >= 0")));
            }
        }
        Ok(Self {
            jump_points,
            jump_masses,
            density,
        })
    }

    /// Absolutely continuous measure `dS = density dx`.
    pub fn from_density(density: SampledFunction) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), Some(density))
    }

    pub fn zero() -> Self {
        Self {
            jump_points: Vec::new(),
            jump_masses: Vec::new(),
            density: None,
        }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    pub fn jump_masses(&self) -> &[f64] {
        &self.jump_masses
    }

    pub fn density(&self) -> Option<&SampledFunction> {
        self.density.as_ref()
    }

    /// `S(x)` on the grid `n·dx` of `[0, xmax]`, right-continuous
    /// (a jump at `p` counts for `x >= p`).
    pub fn cumulative(&self, dx: f64, xmax: f64) -> Result<SampledFunction> {
        let n = grid_len(dx, xmax)?;
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        let mut j = 0;
        let mut acc = 0.0;
        for (i, v) in values.iter_mut().enumerate() {
            let x = i as f64 * dx;
            while j < self.jump_points.len() && self.jump_points[j] <= x + 1e-12 * dx {
                acc += self.jump_masses[j];
                j += 1;
            }
            v.re = acc;
        }
        if let Some(d) = &self.density {
            if (d.dx() - dx).abs() > 1e-12 * dx {
                return Err(Error::InvalidGrid(
                    "density grid differs from the requested grid".into(),
                ));
            }
            let cum = crate::quad::cumulative_simpson(d.samples(), d.dx());
            for (i, v) in values.iter_mut().enumerate() {
                *v += cum[i.min(cum.len() - 1)];
            }
        }
        SampledFunction::new(dx, values)
    }

    /// CSV with header `x,mass` (jumps only).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "mass"])?;
        for (p, m) in self.jump_points.iter().zip(&self.jump_masses) {
            out.write_record([fmt_f(*p), fmt_f(*m)])?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        check_header(rdr.headers()?, &["x", "mass"])?;
        let (mut xs, mut ms) = (Vec::new(), Vec::new());
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse = |k: usize| -> Result<f64> {
                let field = rec.get(k).unwrap_or("");
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: cannot parse {field:?}", line + 2)))
            };
            xs.push(parse(0)?);
            ms.push(parse(1)?);
        }
        Self::new(xs, ms, None)
    }
}
