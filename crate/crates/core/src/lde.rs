//! Linear delta expansion of the oscillation period.
//!
//! The potential is interpolated with the solvable `V₀(u) = (1+λ²)u²/2` and
//! the period integral is expanded in the bookkeeping parameter δ. With the
//! minimal-sensitivity choice `λ_PMS = √(3μ)A/2` the odd δ-orders drop out and
//! the resummed period at summation limit `N` reads
//!
//! ```text
//! T_N = 4π/√(4+3μA²) · Σ_{n=0}^{N} (−1)ⁿ C(−½,n) C(−½,2n) x^{2n},   x = μA²/(4+3μA²)
//! ```
//!
//! with `Ω = 2π/T_N`. The pure quartic case drops the quadratic term, giving
//! `x = 1/3` and the prefactor `4π/√(3μA²)`. Sine-Gordon goes through the
//! Landen-improved elliptic series instead.
//!
//! Order labels: the Duffing "first/second/third order" results correspond
//! to `N = 0, 2, 3`; the pure quartic ones to `N = 1, 2, 3`.

use core::f64::consts::PI;

use crate::elliptic::{self, EllipticParam};
use crate::math;
use crate::model::{DispersionResult, LdeOrder, Method};
use crate::{Error, Result};

/// How `λ_PMS` compares with the sufficient bound for uniform convergence
/// of the δ-series, `λ² > μA²/2 + 1/2`.
///
/// The bound is sufficient, not necessary: the series is accurate well
/// below it, so this is reported and never enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub lambda_pms: f64,
    pub lambda_bound: f64,
    pub satisfied: bool,
    /// `lambda_pms − lambda_bound`.
    pub margin: f64,
}

/// `λ_PMS = √(3μ)·A/2`.
pub fn pms_lambda(mu: f64, a: f64) -> Result<f64> {
    let y = mu * a * a;
    if !(y >= 0.0) {
        return Err(Error::Domain("lambda_PMS requires 3*mu*A^2 >= 0"));
    }
    Ok(0.5 * math::sqrt(3.0 * y))
}

pub fn convergence_check(mu: f64, a: f64) -> Result<ConvergenceReport> {
    if !(mu > 0.0) {
        return Err(Error::Domain("convergence check requires mu > 0"));
    }
    if !(a > 0.0) {
        return Err(Error::Domain("convergence check requires A > 0"));
    }
    let y = mu * a * a;
    let lambda_pms = pms_lambda(mu, a)?;
    let lambda_bound = math::sqrt(0.5 * y + 0.5);
    // λ² − bound² = (y − 2)/4, exact at the boundary y = 2
    let margin = 0.25 * (y - 2.0) / (lambda_pms + lambda_bound);
    Ok(ConvergenceReport {
        lambda_pms,
        lambda_bound,
        satisfied: margin > 0.0,
        margin,
    })
}

/// `Σ_{n=0}^{N} (−1)ⁿ C(−½,n) C(−½,2n) q^n` with `q = x²`.
///
/// Generalized binomials by `C(−½,n) = C(−½,n−1)·(½ − n)/n`.
pub(crate) fn resummed_series(q: f64, order: LdeOrder) -> f64 {
    let mut single = 1.0; // C(-1/2, n)
    let mut double = 1.0; // C(-1/2, 2n)
    let mut power = 1.0;
    let mut sum = 1.0;
    for n in 1..=order.get() {
        single *= (0.5 - n as f64) / n as f64;
        let i = 2 * n - 1;
        double *= (0.5 - i as f64) / i as f64;
        double *= (0.5 - (i + 1) as f64) / (i + 1) as f64;
        power *= q;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * single * double * power;
    }
    sum
}

/// Resummed Duffing period `T_N`.
pub fn duffing_period_lde(mu: f64, a: f64, order: LdeOrder) -> Result<f64> {
    let y = mu * a * a;
    let d = 4.0 + 3.0 * y;
    if !(d > 0.0) {
        return Err(Error::Domain("Duffing LDE requires 4 + 3*mu*A^2 > 0"));
    }
    let x = y / d;
    Ok(4.0 * PI / math::sqrt(d) * resummed_series(x * x, order))
}

pub fn duffing_omega_lde(mu: f64, a: f64, order: LdeOrder) -> Result<DispersionResult> {
    let t = duffing_period_lde(mu, a, order)?;
    let mut out = DispersionResult::new(2.0 * PI / t, Method::Lde(order.get()));
    if mu > 0.0 && a > 0.0 {
        out.diagnostics = convergence_check(mu, a).ok();
    }
    Ok(out)
}

pub fn pure_quartic_period_lde(mu: f64, a: f64, order: LdeOrder) -> Result<f64> {
    let y = mu * a * a;
    if !(mu > 0.0 && a > 0.0 && y > 0.0) {
        return Err(Error::Domain("pure quartic LDE requires mu*A^2 > 0"));
    }
    Ok(4.0 * PI / math::sqrt(3.0 * y) * resummed_series(1.0 / 9.0, order))
}

pub fn pure_quartic_omega_lde(mu: f64, a: f64, order: LdeOrder) -> Result<DispersionResult> {
    let t = pure_quartic_period_lde(mu, a, order)?;
    Ok(DispersionResult::new(
        2.0 * PI / t,
        Method::Lde(order.get()),
    ))
}

/// `Ω = π / (2 K̃_N(sin²(A/2)))` with the Landen-improved elliptic series.
pub fn sine_gordon_omega_lde(a: f64, order: LdeOrder) -> Result<DispersionResult> {
    if !(a > 0.0 && a < PI) {
        return Err(Error::Domain("Sine-Gordon requires 0 < A < pi"));
    }
    let s = math::sin(0.5 * a);
    let k = elliptic::k_lde_improved(EllipticParam(s * s), order)?;
    Ok(DispersionResult::new(
        PI / (2.0 * k),
        Method::Lde(order.get()),
    ))
}
