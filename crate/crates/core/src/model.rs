//! Potentials, wave kinematics and the query/result vocabulary shared by
//! the other modules.
//!
//! All quantities are dimensionless.

use core::fmt;
use core::str::FromStr;

use crate::lde::ConvergenceReport;
use crate::math;
use crate::{Error, Result};

/// Default cap on the summation limit of the LDE series.
pub const MAX_LDE_ORDER: usize = 30;

/// The potential `V(u)` driving the oscillation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// `V(u) = u²/2 + μu⁴/4`. Hardening for μ > 0, softening for μ < 0.
    Duffing { mu: f64 },
    /// `V(u) = −cos u`.
    SineGordon,
    /// `V(u) = μu⁴/4` with μ > 0.
    PureQuartic { mu: f64 },
}

impl Potential {
    pub fn duffing(mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain("Duffing mu must be finite"));
        }
        Ok(Potential::Duffing { mu })
    }

    pub fn sine_gordon() -> Self {
        Potential::SineGordon
    }

    pub fn pure_quartic(mu: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::Domain("pure quartic requires mu > 0"));
        }
        Ok(Potential::PureQuartic { mu })
    }

    /// `V(u)`.
    pub fn value(&self, u: f64) -> f64 {
        match *self {
            Potential::Duffing { mu } => {
                let u2 = u * u;
                0.5 * u2 + 0.25 * mu * u2 * u2
            }
            Potential::SineGordon => -math::cos(u),
            Potential::PureQuartic { mu } => {
                let u2 = u * u;
                0.25 * mu * u2 * u2
            }
        }
    }

    /// `V'(u)`, the restoring force (odd in u for all three potentials).
    pub fn force(&self, u: f64) -> f64 {
        match *self {
            Potential::Duffing { mu } => u + mu * u * u * u,
            Potential::SineGordon => math::sin(u),
            Potential::PureQuartic { mu } => mu * u * u * u,
        }
    }

    /// Checks that an oscillation of amplitude `a` exists in this potential.
    pub fn check_amplitude(&self, a: f64) -> Result<()> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain("amplitude must be finite and > 0"));
        }
        match *self {
            Potential::Duffing { mu } => {
                if 1.0 + mu * a * a <= 0.0 {
                    return Err(Error::Domain(
                        "Duffing requires 1 + mu*A^2 > 0 (no turning point at A)",
                    ));
                }
            }
            Potential::SineGordon => {
                if a >= core::f64::consts::PI {
                    return Err(Error::Domain("Sine-Gordon requires 0 < A < pi"));
                }
            }
            Potential::PureQuartic { mu } => {
                if !(mu > 0.0) {
                    return Err(Error::Domain("pure quartic requires mu > 0"));
                }
            }
        }
        Ok(())
    }

    /// Conserved energy `E = V(A)` of the oscillation with amplitude `a`.
    pub fn turning_energy(&self, a: f64) -> Result<f64> {
        self.check_amplitude(a)?;
        Ok(self.value(a))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Potential::Duffing { .. } => "duffing",
            Potential::SineGordon => "sine-gordon",
            Potential::PureQuartic { .. } => "pure-quartic",
        }
    }
}

/// `ω = √(Ω² + k²)`, the temporal frequency of `u(kx − ωt)`.
pub fn omega_from_wavenumber(omega_cap: f64, k: f64) -> Result<f64> {
    if !(omega_cap.is_finite() && omega_cap > 0.0) {
        return Err(Error::Domain("Omega must be finite and > 0"));
    }
    if !k.is_finite() {
        return Err(Error::Domain("wavenumber must be finite"));
    }
    if k == 0.0 {
        return Ok(omega_cap);
    }
    Ok(math::sqrt(omega_cap * omega_cap + k * k))
}

/// Wavenumber and amplitude of a traveling wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext {
    k: f64,
    amplitude: f64,
}

impl WaveContext {
    pub fn new(k: f64, amplitude: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::Domain("wavenumber must be finite"));
        }
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::Domain("amplitude must be finite and > 0"));
        }
        Ok(WaveContext { k, amplitude })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Temporal frequency for a given Ω.
    pub fn omega(&self, omega_cap: f64) -> Result<f64> {
        omega_from_wavenumber(omega_cap, self.k)
    }
}

/// Summation limit `N` of the LDE series, bounded by a configurable maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LdeOrder(usize);

impl LdeOrder {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limit(n, MAX_LDE_ORDER)
    }

    pub fn with_limit(n: usize, max: usize) -> Result<Self> {
        if n > max {
            return Err(Error::Order { requested: n, max });
        }
        Ok(LdeOrder(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Which formula family computes Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    /// LDE series with summation limit N.
    Lde(usize),
    /// Harmonic-balance baseline, order 1 or 2.
    Lim(u8),
}

impl Method {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Method::Exact => Ok(()),
            Method::Lde(n) => LdeOrder::new(n).map(|_| ()),
            Method::Lim(1 | 2) => Ok(()),
            Method::Lim(_) => Err(Error::Unsupported("Lim order must be 1 or 2")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Lde(n) => write!(f, "lde{n}"),
            Method::Lim(n) => write!(f, "lim{n}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Parses the labels produced by `Display`: `exact`, `lde<N>`, `lim<1|2>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let method = if s.eq_ignore_ascii_case("exact") {
            Method::Exact
        } else if let Some(n) = s.strip_prefix("lde") {
            Method::Lde(n.parse().map_err(|_| Error::InvalidSpec("bad LDE order"))?)
        } else if let Some(n) = s.strip_prefix("lim") {
            Method::Lim(n.parse().map_err(|_| Error::InvalidSpec("bad Lim order"))?)
        } else {
            return Err(Error::InvalidSpec(
                "method must be exact, lde<N> or lim<1|2>",
            ));
        };
        method.validate()?;
        Ok(method)
    }
}

/// One unit of work: a potential, an amplitude and a method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionQuery {
    pub potential: Potential,
    pub amplitude: f64,
    pub method: Method,
    /// Absolute tolerance handed to the quadrature oracle.
    pub tol: f64,
}

impl DispersionQuery {
    pub fn new(potential: Potential, amplitude: f64, method: Method, tol: f64) -> Result<Self> {
        potential.check_amplitude(amplitude)?;
        method.validate()?;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidSpec("tolerance must be > 0"));
        }
        Ok(DispersionQuery {
            potential,
            amplitude,
            method,
            tol,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionResult {
    /// Ω, always > 0.
    pub omega_cap: f64,
    pub method: Method,
    pub diagnostics: Option<ConvergenceReport>,
}

impl DispersionResult {
    pub(crate) fn new(omega_cap: f64, method: Method) -> Self {
        DispersionResult {
            omega_cap,
            method,
            diagnostics: None,
        }
    }
}
