//! Registry of closed-form test functions with their known transforms and
//! expected boundary verdicts.
//!
//! The default registry is compiled in from `data/gallery.json`; the same
//! format can be loaded from any file.

use crate::asymptotics::SingularPart;
use crate::complex_serde;
use crate::error::{Error, Result};
use crate::signal::{SampledFunction, Verdict};
use crate::specfun::EULER_GAMMA;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

const DEFAULT_GALLERY: &str = include_str!("../data/gallery.json");

/// Closed-form expression in `x >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Expr {
    Constant {
        #[serde(with = "complex_serde")]
        value: Complex64,
    },
    /// `slope·x`
    Ramp {
        slope: f64,
    },
    /// `amp·e^{i·freq·x}`
    Tone {
        freq: f64,
        #[serde(with = "complex_serde", default = "one")]
        amp: Complex64,
    },
    /// `sin(freq·x)`
    Sine {
        freq: f64,
    },
    /// `cos(freq·x)`
    Cosine {
        freq: f64,
    },
    /// `(1+x)^{-p}`
    InversePower {
        p: f64,
    },
    /// `e^{i·freq·x}(1+x)^{-p}`
    ModulatedInverse {
        freq: f64,
        p: f64,
    },
    /// `e^{-rate·x}cos(freq·x)`
    DampedCosine {
        rate: f64,
        freq: f64,
    },
    /// `x^beta`
    Power {
        beta: f64,
    },
    /// `(log x + shift)` for `x >= 1`, zero before.
    LogPlus {
        #[serde(default = "euler_gamma")]
        shift: f64,
    },
    /// Unit step at `at`.
    Step {
        at: f64,
    },
    /// `x(1 + cos(x)/2)`
    LinearWithCosine,
    Sum {
        terms: Vec<Expr>,
    },
    /// `coeff·expr`
    Scaled {
        #[serde(with = "complex_serde")]
        coeff: Complex64,
        expr: Box<Expr>,
    },
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn euler_gamma() -> f64 {
    EULER_GAMMA
}

impl Expr {
    pub fn eval(&self, x: f64) -> Complex64 {
        let re = |v: f64| Complex64::new(v, 0.0);
        match self {
            Expr::Constant { value } => *value,
            Expr::Ramp { slope } => re(slope * x),
            Expr::Tone { freq, amp } => amp * Complex64::from_polar(1.0, freq * x),
            Expr::Sine { freq } => re((freq * x).sin()),
            Expr::Cosine { freq } => re((freq * x).cos()),
            Expr::InversePower { p } => re((1.0 + x).powf(-p)),
            Expr::ModulatedInverse { freq, p } => {
                Complex64::from_polar((1.0 + x).powf(-p), freq * x)
            }
            Expr::DampedCosine { rate, freq } => re((-rate * x).exp() * (freq * x).cos()),
            Expr::Power { beta } => re(if x > 0.0 { x.powf(*beta) } else { 0.0 }),
            Expr::LogPlus { shift } => re(if x >= 1.0 { x.ln() + shift } else { 0.0 }),
            Expr::Step { at } => re(if x >= *at { 1.0 } else { 0.0 }),
            Expr::LinearWithCosine => re(x * (1.0 + 0.5 * x.cos())),
            Expr::Sum { terms } => terms.iter().map(|t| t.eval(x)).sum(),
            Expr::Scaled { coeff, expr } => coeff * expr.eval(x),
        }
    }

    /// Sample on `[0, xmax]` with the expression attached as evaluator.
    pub fn sample(&self, dx: f64, xmax: f64) -> Result<SampledFunction> {
        let e = self.clone();
        SampledFunction::from_fn(move |x| e.eval(x), dx, xmax)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub dx: f64,
    pub xmax: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedVerdict {
    pub t0: f64,
    pub lambda: f64,
    pub verdict: Verdict,
}

/// Data for the finite-form experiment: `ρ̂(0) = ∫₀^∞ρ` (improper or Abel).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteFormFixture {
    #[serde(with = "complex_serde")]
    pub rho_hat0: Complex64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalleryEntry {
    pub name: String,
    pub description: String,
    /// Where the stated facts come from: `"worked example"`,
    /// `"closed form"` or `"constructed"`.
    pub source: String,
    pub tau: Expr,
    pub grid: Grid,
    /// Boundary singular part of `L{τ}` modulo a function analytic on
    /// `Re s >= 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_part: Option<SingularPart>,
    /// `L{τ}` equals the singular part exactly (no analytic correction).
    #[serde(default)]
    pub exact_transform: bool,
    #[serde(default)]
    pub expected: Vec<ExpectedVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_form: Option<FiniteFormFixture>,
}

impl GalleryEntry {
    pub fn sample(&self) -> Result<SampledFunction> {
        self.tau.sample(self.grid.dx, self.grid.xmax)
    }

    pub fn sample_on(&self, dx: f64, xmax: f64) -> Result<SampledFunction> {
        self.tau.sample(dx, xmax)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gallery {
    pub entries: Vec<GalleryEntry>,
}

impl Gallery {
    /// The compiled-in registry.
    pub fn builtin() -> Gallery {
        Gallery::from_json(DEFAULT_GALLERY).expect("built-in gallery parses")
    }

    pub fn from_json(s: &str) -> Result<Gallery> {
        let g: Gallery = serde_json::from_str(s)?;
        g.validate()?;
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Gallery> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Gallery::from_json(&s)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if self.entries[..i].iter().any(|o| o.name == e.name) {
                return Err(Error::InvalidInput(format!("duplicate entry {}", e.name)));
            }
            if let Some(sp) = &e.singular_part {
                sp.validate()?;
            }
            if !(e.grid.dx > 0.0 && e.grid.xmax > e.grid.dx) {
                return Err(Error::InvalidGrid(format!("entry {}", e.name)));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&GalleryEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("no gallery entry named {name}")))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::laplace;

    #[test]
    fn builtin_parses_and_round_trips() {
        let g = Gallery::builtin();
        assert!(g.entries.len() >= 10);
        let again = Gallery::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(again, g);
        assert!(g.get("ramp").is_ok());
        assert!(g.get("nope").is_err());
    }

    #[test]
    fn expressions() {
        let e = Expr::LinearWithCosine;
        assert_eq!(e.eval(0.0), Complex64::new(0.0, 0.0));
        assert!((e.eval(std::f64::consts::PI).re - std::f64::consts::PI / 2.0).abs() < 1e-12);
        let s = Expr::Sum {
            terms: vec![Expr::Ramp { slope: 2.0 }, Expr::Constant { value: one() }],
        };
        assert_eq!(s.eval(3.0), Complex64::new(7.0, 0.0));
        assert_eq!(
            Expr::LogPlus { shift: 0.0 }.eval(0.5),
            Complex64::new(0.0, 0.0)
        );
        let bad = r#"{"entries":[{"name":"a","description":"","source":"","tau":{"kind":"ramp","slope":1},"grid":{"dx":0.1,"xmax":10},"extra":1}]}"#;
        assert!(Gallery::from_json(bad).is_err());
    }

    #[test]
    fn exact_transforms_match_quadrature() {
        // entries flagged exact: L{τ; s} at s = 1 + it equals the singular part
        for e in Gallery::builtin()
            .entries
            .iter()
            .filter(|e| e.exact_transform)
        {
            let sp = e.singular_part.as_ref().unwrap();
            let f = e.sample_on(1e-3, 60.0).unwrap();
            for t in [-1.5, 0.0, 2.0] {
                let s = Complex64::new(1.0, t);
                let est = laplace(&f, s, None).unwrap();
                let want = sp.transform(s);
                // x^{1/2} limits Simpson to O(dx^{3/2}) at the origin
                assert!(
                    (est.value - want).norm() < 1e-4 * (1.0 + want.norm()) + est.truncation_bound,
                    "{} at {s}",
                    e.name
                );
            }
        }
    }
}
