//! Boundary singular parts of Laplace transforms and the transfer map.
//!
//! A [`SingularPart`] lists the admitted singular shapes on the boundary line
//! `Re s = 0`:
//!
//! ```text
//! a/s²,   b/(s - i t),   (c + d log^k(1/s)) / s^(β+1)
//! ```
//!
//! together with optional Wiener–Ikehara data on the line `Re s = α`.
//! [`transfer_expansion`] maps the singular part to the asymptotic expansion
//! of the originating function, and [`laplace_of_term`] maps single terms
//! back to singular fragments.

use crate::complex_serde;
use crate::error::{Error, Result};
use crate::specfun::{self, binomial};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// `b / (s - i t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplePole {
    #[serde(with = "complex_serde")]
    pub b: Complex64,
    pub t: f64,
}

/// `(c + d log^k(1/s)) / s^(β+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerLogTerm {
    #[serde(with = "complex_serde", default)]
    pub c: Complex64,
    #[serde(with = "complex_serde", default)]
    pub d: Complex64,
    pub beta: f64,
    #[serde(default = "default_k")]
    pub k: u32,
}

fn default_k() -> u32 {
    1
}

/// `coeff / (s - i t)^order` with `order >= 2`.
///
/// These are not among the transferable shapes. They are carried so that a
/// full closed-form transform (for instance the double poles at `±i` of the
/// function `x (1 + cos x / 2)`) can be stated and checked, and they are
/// reported separately by [`transfer_expansion`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherPole {
    #[serde(with = "complex_serde")]
    pub coeff: Complex64,
    pub t: f64,
    pub order: u32,
}

/// One conjugate pair `r (e^{iθ}/(s-α-it) + e^{-iθ}/(s-α+it))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WiPair {
    pub r: f64,
    pub theta: f64,
    pub t: f64,
}

/// Pole data of a Stieltjes transform on the line `Re s = α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WienerIkeharaData {
    pub alpha: f64,
    pub r0: f64,
    #[serde(default)]
    pub pairs: Vec<WiPair>,
}

/// Declarative model of the boundary singularities of a Laplace transform.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPart {
    #[serde(with = "complex_serde", default)]
    pub a: Complex64,
    #[serde(default)]
    pub simple_poles: Vec<SimplePole>,
    #[serde(default)]
    pub powerlog: Vec<PowerLogTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wi: Option<WienerIkeharaData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub higher_poles: Vec<HigherPole>,
}

/// Canonical key of a singular basis element, used to compare singular
/// parts coefficient-wise regardless of how they were written down.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Atom {
    /// `1/s²`
    Quadratic,
    /// `1/(s - i t)`
    Pole { t: f64 },
    /// `log^k(1/s) / s^(β+1)`; `k = 0` is the pure power.
    PowerLog { beta: f64, k: u32 },
    /// `1/(s - i t)^order`, `order >= 2`
    Higher { t: f64, order: u32 },
}

impl Atom {
    fn canonical(self) -> Atom {
        match self {
            Atom::PowerLog { beta, k: 0 } if beta == 0.0 => Atom::Pole { t: 0.0 },
            Atom::PowerLog { beta, k: 0 } if beta == 1.0 => Atom::Quadratic,
            Atom::Higher { t, order: 2 } if t == 0.0 => Atom::Quadratic,
            Atom::Pole { t } => Atom::Pole { t: t + 0.0 },
            other => other,
        }
    }

    fn sort_key(&self) -> (u8, f64, u32) {
        match *self {
            Atom::Quadratic => (0, 0.0, 0),
            Atom::Pole { t } => (1, t, 0),
            Atom::PowerLog { beta, k } => (2, beta, k),
            Atom::Higher { t, order } => (3, t, order),
        }
    }

    fn cmp_key(&self, other: &Atom) -> Ordering {
        let (a0, a1, a2) = self.sort_key();
        let (b0, b1, b2) = other.sort_key();
        a0.cmp(&b0).then(a1.total_cmp(&b1)).then(a2.cmp(&b2))
    }
}

impl SingularPart {
    pub fn is_empty(&self) -> bool {
        self.a == Complex64::new(0.0, 0.0)
            && self.simple_poles.is_empty()
            && self.powerlog.is_empty()
            && self.wi.is_none()
            && self.higher_poles.is_empty()
    }

    /// Check the structural invariants.
    ///
    /// Negative β in a power-log term is accepted here; the transfer map
    /// drops such terms and reports them.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSingularPart(m));
        if !(self.a.re.is_finite() && self.a.im.is_finite()) {
            return bad("coefficient a is not finite".into());
        }
        for (i, p) in self.simple_poles.iter().enumerate() {
            if !p.t.is_finite() || !p.b.re.is_finite() || !p.b.im.is_finite() {
                return bad(format!("simple pole {i} is not finite"));
            }
            if self.simple_poles[..i].iter().any(|q| q.t == p.t) {
                return bad(format!("simple pole frequency {} repeated", p.t));
            }
        }
        for (i, p) in self.powerlog.iter().enumerate() {
            if !p.beta.is_finite() || p.beta >= 1.0 || p.beta <= -1.0 {
                return bad(format!(
                    "power-log term {i}: beta = {} outside (-1, 1)",
                    p.beta
                ));
            }
            if p.k < 1 {
                return bad(format!("power-log term {i}: k must be >= 1"));
            }
        }
        for (i, p) in self.higher_poles.iter().enumerate() {
            if p.order < 2 || !p.t.is_finite() {
                return bad(format!("higher pole {i}: order must be >= 2"));
            }
        }
        if let Some(wi) = &self.wi {
            if !(wi.alpha > 0.0 && wi.alpha.is_finite()) {
                return bad(format!("wi alpha = {} must be > 0", wi.alpha));
            }
            for (i, p) in wi.pairs.iter().enumerate() {
                if !(p.t > 0.0 && p.t.is_finite()) {
                    return bad(format!("wi pair {i}: t = {} must be > 0", p.t));
                }
                if wi.pairs[..i].iter().any(|q| q.t == p.t) {
                    return bad(format!("wi pair frequency {} repeated", p.t));
                }
            }
        }
        Ok(())
    }

    /// Disjoint-union of two singular parts (coefficients of shared simple
    /// poles are added).
    pub fn union(&self, other: &SingularPart) -> SingularPart {
        let mut out = self.clone();
        out.a += other.a;
        for p in &other.simple_poles {
            match out.simple_poles.iter_mut().find(|q| q.t == p.t) {
                Some(q) => q.b += p.b,
                None => out.simple_poles.push(*p),
            }
        }
        out.powerlog.extend(other.powerlog.iter().copied());
        out.higher_poles.extend(other.higher_poles.iter().copied());
        if out.wi.is_none() {
            out.wi = other.wi.clone();
        }
        out
    }

    /// Closed-form value of the singular part at `s` (principal branch of
    /// the logarithm; intended for `Re s > 0`).
    pub fn transform(&self, s: Complex64) -> Complex64 {
        let i = Complex64::i();
        let mut acc = self.a / (s * s);
        for p in &self.simple_poles {
            acc += p.b / (s - i * p.t);
        }
        let log_inv = (Complex64::new(1.0, 0.0) / s).ln();
        for p in &self.powerlog {
            let num = p.c + p.d * log_inv.powu(p.k);
            acc += num / s.powf(p.beta + 1.0);
        }
        for p in &self.higher_poles {
            acc += p.coeff / (s - i * p.t).powu(p.order);
        }
        if let Some(wi) = &self.wi {
            acc += wi.r0 / (s - wi.alpha);
            for p in &wi.pairs {
                let e = Complex64::from_polar(1.0, p.theta);
                acc += p.r * (e / (s - wi.alpha - i * p.t) + e.conj() / (s - wi.alpha + i * p.t));
            }
        }
        acc
    }

    /// Canonical coefficient list over the singular basis (zeros removed,
    /// equal atoms merged). Wiener–Ikehara data is not included.
    pub fn atoms(&self) -> Vec<(Atom, Complex64)> {
        let mut raw: Vec<(Atom, Complex64)> = Vec::new();
        raw.push((Atom::Quadratic, self.a));
        for p in &self.simple_poles {
            raw.push((Atom::Pole { t: p.t }, p.b));
        }
        for p in &self.powerlog {
            raw.push((Atom::PowerLog { beta: p.beta, k: 0 }, p.c));
            raw.push((
                Atom::PowerLog {
                    beta: p.beta,
                    k: p.k,
                },
                p.d,
            ));
        }
        for p in &self.higher_poles {
            raw.push((
                Atom::Higher {
                    t: p.t,
                    order: p.order,
                },
                p.coeff,
            ));
        }
        let mut canon: Vec<(Atom, Complex64)> =
            raw.into_iter().map(|(a, c)| (a.canonical(), c)).collect();
        canon.sort_by(|x, y| x.0.cmp_key(&y.0));
        let mut merged: Vec<(Atom, Complex64)> = Vec::new();
        for (atom, c) in canon {
            match merged.last_mut() {
                Some((last, acc)) if last.cmp_key(&atom) == Ordering::Equal => *acc += c,
                _ => merged.push((atom, c)),
            }
        }
        merged.retain(|(_, c)| c.norm() != 0.0);
        merged
    }

    /// Coefficient-wise comparison of [`SingularPart::atoms`] with an
    /// absolute-plus-relative tolerance.
    pub fn approx_eq(&self, other: &SingularPart, tol: f64) -> bool {
        let a = self.atoms();
        let b = other.atoms();
        let significant = |v: &[(Atom, Complex64)]| -> Vec<(Atom, Complex64)> {
            v.iter().copied().filter(|(_, c)| c.norm() > tol).collect()
        };
        let (a, b) = (significant(&a), significant(&b));
        a.len() == b.len()
            && a.iter().zip(&b).all(|((xa, ca), (xb, cb))| {
                xa.cmp_key(xb) == Ordering::Equal
                    && (ca - cb).norm() <= tol * (1.0 + ca.norm().max(cb.norm()))
            })
    }

    /// Exact inverse Laplace transform of the non-Wiener–Ikehara part.
    pub fn time_domain(&self) -> Result<TimeDomain> {
        self.validate()?;
        let mut powerlog = Vec::with_capacity(self.powerlog.len());
        for p in &self.powerlog {
            let d = specfun::recip_gamma_derivs(p.beta + 1.0, p.k as usize)?;
            powerlog.push((*p, d.values));
        }
        Ok(TimeDomain {
            sp: self.clone(),
            powerlog,
        })
    }
}

/// Closed-form time function whose Laplace transform is exactly the given
/// singular part.
///
/// Uses `x^μ/Γ(μ+1) ↦ s^{-μ-1}` and its μ-derivatives, so the log-power
/// terms carry `log x` (not `log₊ x`) and no entire correction appears.
#[derive(Debug, Clone)]
pub struct TimeDomain {
    sp: SingularPart,
    powerlog: Vec<(PowerLogTerm, Vec<f64>)>,
}

impl TimeDomain {
    /// Value at `x`; zero for `x <= 0`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        if x <= 0.0 {
            return zero;
        }
        let mut acc = self.sp.a * x;
        for p in &self.sp.simple_poles {
            acc += p.b * Complex64::from_polar(1.0, p.t * x);
        }
        let lx = x.ln();
        for (p, dvals) in &self.powerlog {
            let k = p.k as usize;
            let mut poly = zero;
            for (j, dj) in dvals.iter().enumerate() {
                poly += p.d * (binomial(k, j) * dj * lx.powi((k - j) as i32));
            }
            let c_part = p.c * dvals[0];
            acc += (c_part + poly) * x.powf(p.beta);
        }
        for p in &self.sp.higher_poles {
            let n = p.order - 1;
            let fact: f64 = (1..=n).map(f64::from).product();
            acc += p.coeff * x.powi(n as i32) / fact * Complex64::from_polar(1.0, p.t * x);
        }
        acc
    }
}

/// One term `coeff · x^β · log^m x · e^{i·freq·x} · e^{rate·x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTerm {
    #[serde(with = "complex_serde")]
    pub coeff: Complex64,
    pub beta: f64,
    pub logpow: u32,
    pub freq: f64,
    pub rate: f64,
}

impl AsymptoticTerm {
    pub fn new(coeff: Complex64, beta: f64, logpow: u32, freq: f64, rate: f64) -> Self {
        Self {
            coeff,
            beta,
            logpow,
            freq,
            rate,
        }
    }

    fn same_shape(&self, other: &AsymptoticTerm) -> bool {
        self.beta == other.beta
            && self.logpow == other.logpow
            && self.freq == other.freq
            && self.rate == other.rate
    }

    /// `(rate, beta, logpow)` descending, ties by frequency ascending.
    fn order(&self, other: &AsymptoticTerm) -> Ordering {
        other
            .rate
            .total_cmp(&self.rate)
            .then(other.beta.total_cmp(&self.beta))
            .then(other.logpow.cmp(&self.logpow))
            .then(self.freq.total_cmp(&other.freq))
    }

    /// Value of the shape without the coefficient.
    fn shape_at(&self, x: f64) -> Complex64 {
        let mut v = x.powf(self.beta) * (self.rate * x).exp();
        if self.logpow > 0 {
            v *= x.ln().powi(self.logpow as i32);
        }
        Complex64::from_polar(v, self.freq * x)
    }

    fn needs_log_plus(&self) -> bool {
        self.logpow > 0 || self.beta.fract() != 0.0
    }
}

impl fmt::Display for AsymptoticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff;
        if c.im == 0.0 {
            write!(f, "{}", c.re)?;
        } else {
            write!(f, "({}{:+}i)", c.re, c.im)?;
        }
        if self.beta == 1.0 {
            write!(f, "·x")?;
        } else if self.beta != 0.0 {
            write!(f, "·x^{}", self.beta)?;
        }
        match self.logpow {
            0 => {}
            1 => write!(f, "·log x")?,
            m => write!(f, "·log^{m} x")?,
        }
        if self.freq != 0.0 {
            write!(f, "·e^(i·{}·x)", self.freq)?;
        }
        if self.rate != 0.0 {
            write!(f, "·e^({}·x)", self.rate)?;
        }
        Ok(())
    }
}

/// Remainder class of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Remainder {
    /// `o(1)`: pseudofunction boundary hypotheses.
    LittleO1,
    /// `O(1)`: pseudomeasure boundary hypotheses.
    BigO1,
}

/// Why a singular term did not produce expansion terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedTerm {
    pub description: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExpansion {
    pub terms: Vec<AsymptoticTerm>,
    pub remainder: Remainder,
    /// Exponential rate multiplying the remainder (`e^{αx}·o(1)`); zero
    /// outside the Wiener–Ikehara setting.
    #[serde(default)]
    pub remainder_rate: f64,
    /// Terms absorbed into the remainder class.
    #[serde(default)]
    pub dropped: Vec<DroppedTerm>,
    /// Singular data outside the transferable shapes.
    #[serde(default)]
    pub non_transfer: Vec<HigherPole>,
}

impl AsymptoticExpansion {
    fn from_terms(raw: Vec<AsymptoticTerm>, remainder: Remainder) -> Self {
        let mut terms: Vec<AsymptoticTerm> = Vec::new();
        for t in raw {
            match terms.iter_mut().find(|u| u.same_shape(&t)) {
                Some(u) => u.coeff += t.coeff,
                None => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        terms.sort_by(|a, b| a.order(b));
        Self {
            terms,
            remainder,
            remainder_rate: 0.0,
            dropped: Vec::new(),
            non_transfer: Vec::new(),
        }
    }

    /// Human-readable sum of the main terms.
    pub fn describe(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Main term with the `log₊` convention: terms carrying a logarithm or a
    /// fractional power vanish on `[0, 1]`; the others are exact for `x >= 0`.
    pub fn eval_log_plus(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if x < 0.0 {
            return acc;
        }
        for t in &self.terms {
            if t.needs_log_plus() && x <= 1.0 {
                continue;
            }
            if x == 0.0 {
                if t.beta == 0.0 {
                    acc += t.coeff;
                }
                continue;
            }
            acc += t.coeff * t.shape_at(x);
        }
        acc
    }
}

/// Asymptotic expansion of a function from the boundary singular part of
/// its Laplace transform.
///
/// `a/s²` gives `a x`, `b/(s - it)` gives `b e^{itx}`, and a power-log term
/// gives `x^β (c/Γ(β+1) + d Σ_j C(k,j) D_j(β+1) log^{k-j} x)`. Power-log terms
/// with negative β are dropped (they tend to zero). Under the `O(1)`
/// remainder, bare constants (`b/s`) are dropped as well.
pub fn transfer_expansion(sp: &SingularPart, remainder: Remainder) -> Result<AsymptoticExpansion> {
    sp.validate()?;
    if sp.wi.is_some() {
        return Err(Error::InvalidSingularPart(
            "Wiener-Ikehara data present; use wiener_ikehara_mainterm".into(),
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut raw = Vec::new();
    let mut dropped = Vec::new();
    raw.push(AsymptoticTerm::new(sp.a, 1.0, 0, 0.0, 0.0));
    for p in &sp.simple_poles {
        if remainder == Remainder::BigO1 && p.t == 0.0 {
            dropped.push(DroppedTerm {
                description: format!("{}/s", fmt_c(p.b)),
                reason: "bounded constant absorbed into O(1)".into(),
            });
            continue;
        }
        raw.push(AsymptoticTerm::new(p.b, 0.0, 0, p.t, 0.0));
    }
    for p in &sp.powerlog {
        let desc = format!(
            "({} + {}·log^{}(1/s))/s^{}",
            fmt_c(p.c),
            fmt_c(p.d),
            p.k,
            p.beta + 1.0
        );
        if p.beta < 0.0 {
            dropped.push(DroppedTerm {
                description: desc,
                reason: "negative beta: pseudomeasure, contributes o(1)".into(),
            });
            continue;
        }
        let dvals = specfun::recip_gamma_derivs(p.beta + 1.0, p.k as usize)?;
        let k = p.k as usize;
        let mut constant = p.c * dvals.get(0);
        for j in 0..=k {
            let coeff = p.d * (binomial(k, j) * dvals.get(j));
            if j == k {
                constant += coeff;
            } else {
                raw.push(AsymptoticTerm::new(coeff, p.beta, (k - j) as u32, 0.0, 0.0));
            }
        }
        if remainder == Remainder::BigO1 && p.beta == 0.0 {
            if constant != zero {
                dropped.push(DroppedTerm {
                    description: desc,
                    reason: "constant part absorbed into O(1)".into(),
                });
            }
        } else {
            raw.push(AsymptoticTerm::new(constant, p.beta, 0, 0.0, 0.0));
        }
    }
    let mut exp = AsymptoticExpansion::from_terms(raw, remainder);
    exp.dropped = dropped;
    exp.non_transfer = sp.higher_poles.clone();
    Ok(exp)
}

/// Main term of the Wiener–Ikehara asymptotics
/// `e^{αx}(r₀/α + 2Σ r_n cos(t_n x + θ_n - arctan(t_n/α))/√(α²+t_n²))`,
/// written as conjugate frequency pairs with rate α.
pub fn wiener_ikehara_mainterm(sp: &SingularPart) -> Result<AsymptoticExpansion> {
    sp.validate()?;
    let wi = sp.wi.as_ref().ok_or(Error::MissingWienerIkehara)?;
    let mut raw = vec![AsymptoticTerm::new(
        Complex64::new(wi.r0 / wi.alpha, 0.0),
        0.0,
        0,
        0.0,
        wi.alpha,
    )];
    for p in &wi.pairs {
        let amp = p.r / wi.alpha.hypot(p.t);
        let phase = p.theta - (p.t / wi.alpha).atan();
        raw.push(AsymptoticTerm::new(
            Complex64::from_polar(amp, phase),
            0.0,
            0,
            p.t,
            wi.alpha,
        ));
        raw.push(AsymptoticTerm::new(
            Complex64::from_polar(amp, -phase),
            0.0,
            0,
            -p.t,
            wi.alpha,
        ));
    }
    let mut exp = AsymptoticExpansion::from_terms(raw, Remainder::LittleO1);
    exp.remainder_rate = wi.alpha;
    Ok(exp)
}

/// Result of [`laplace_of_term`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplaceImage {
    pub fragment: SingularPart,
    /// The fragment is the transform only up to an entire function (log
    /// terms under the `log₊` convention).
    pub modulo_entire: bool,
}

/// Singular fragment of the Laplace transform of a single expansion term.
pub fn laplace_of_term(term: &AsymptoticTerm) -> Result<LaplaceImage> {
    let unsupported = |why: &str| Err(Error::UnsupportedTerm(format!("{term}: {why}")));
    if term.rate != 0.0 {
        return unsupported("exponential rate must be zero");
    }
    if !(term.beta > -1.0) || !term.beta.is_finite() {
        return unsupported("beta must exceed -1");
    }
    let c = term.coeff;
    let beta = term.beta;
    let is_nonneg_int = beta >= 0.0 && beta.fract() == 0.0;
    let mut sp = SingularPart::default();
    if term.freq != 0.0 {
        if term.logpow != 0 || !is_nonneg_int {
            return unsupported("oscillating terms must be x^n e^{itx} with integer n");
        }
        let n = beta as u32;
        if n == 0 {
            sp.simple_poles.push(SimplePole { b: c, t: term.freq });
        } else {
            let fact: f64 = (1..=n).map(f64::from).product();
            sp.higher_poles.push(HigherPole {
                coeff: c * fact,
                t: term.freq,
                order: n + 1,
            });
        }
        return Ok(LaplaceImage {
            fragment: sp,
            modulo_entire: false,
        });
    }
    if term.logpow == 0 {
        if beta == 1.0 {
            sp.a = c;
        } else if beta == 0.0 {
            sp.simple_poles.push(SimplePole { b: c, t: 0.0 });
        } else if beta < 1.0 {
            sp.powerlog.push(PowerLogTerm {
                c: c * specfun::gamma(beta + 1.0)?,
                d: Complex64::new(0.0, 0.0),
                beta,
                k: 1,
            });
        } else if is_nonneg_int {
            let n = beta as u32;
            let fact: f64 = (1..=n).map(f64::from).product();
            sp.higher_poles.push(HigherPole {
                coeff: c * fact,
                t: 0.0,
                order: n + 1,
            });
        } else {
            return unsupported("non-integer beta >= 1");
        }
        return Ok(LaplaceImage {
            fragment: sp,
            modulo_entire: false,
        });
    }
    if beta >= 1.0 {
        return unsupported("log-power terms need beta < 1");
    }
    let m = term.logpow as usize;
    let e = log_power_coefficients(beta, m)?;
    for (i, ei) in e.iter().enumerate() {
        if i == 0 {
            continue;
        }
        sp.powerlog.push(PowerLogTerm {
            c: if i == 1 {
                c * e[0]
            } else {
                Complex64::new(0.0, 0.0)
            },
            d: c * *ei,
            beta,
            k: i as u32,
        });
    }
    Ok(LaplaceImage {
        fragment: sp,
        modulo_entire: true,
    })
}

/// Coefficients `e_i` with `L{x^β log^m x} = Σ_i e_i s^{-β-1} log^i(1/s)`
/// modulo entire functions, obtained by inverting the triangular relation
/// `x^β Σ_j C(m,j) D_j(β+1) log^{m-j} x ↦ s^{-β-1} log^m(1/s)`.
fn log_power_coefficients(beta: f64, m: usize) -> Result<Vec<f64>> {
    let d = specfun::recip_gamma_derivs(beta + 1.0, m)?;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    for level in 0..=m {
        let mut e = vec![0.0; m + 1];
        e[level] = 1.0;
        for j in 1..=level {
            let w = binomial(level, j) * d.get(j);
            for (i, v) in table[level - j].iter().enumerate() {
                e[i] -= w * v;
            }
        }
        for v in e.iter_mut() {
            *v /= d.get(0);
        }
        table.push(e);
    }
    Ok(table.pop().unwrap_or_default())
}

/// `Σ coeff · x^β · (log x)^m · e^{i·freq·x} · e^{rate·x}`.
pub fn eval_expansion(e: &AsymptoticExpansion, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "eval_expansion",
            arg: x,
            reason: "requires x > 0",
        });
    }
    if x <= 1.0 && e.terms.iter().any(|t| t.logpow > 0) {
        return Err(Error::Domain {
            function: "eval_expansion",
            arg: x,
            reason: "log terms require x > 1",
        });
    }
    Ok(e.terms.iter().map(|t| t.coeff * t.shape_at(x)).sum())
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("({}{:+}i)", z.re, z.im)
    }
}
