//! Harmonic-balance dispersion formulas (orders 1 and 2), used as baselines,
//! and the Bessel function `J_n` they need.

use crate::math;
use crate::model::{DispersionResult, Method};
use crate::{Error, Result};

const BESSEL_MAX_ORDER: u32 = 8;
const BESSEL_MAX_ARG: f64 = 20.0;
const BESSEL_REL_TOL: f64 = 1e-17;

/// `J_n(x)` by the ascending series `Σ (−1)^s (x/2)^{n+2s} / (s! (n+s)!)`.
///
/// Restricted to `n ≤ 8`, `|x| ≤ 20`, which covers every use here (A < 2π).
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    if n > BESSEL_MAX_ORDER {
        return Err(Error::Domain("Bessel order must be <= 8"));
    }
    if !(x.abs() <= BESSEL_MAX_ARG) {
        return Err(Error::Domain("Bessel argument must satisfy |x| <= 20"));
    }
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    if term == 0.0 {
        return Ok(0.0);
    }
    let q = -half * half;
    let mut sum = term;
    let mut s = 0u32;
    loop {
        s += 1;
        term *= q / (s as f64 * (n + s) as f64);
        sum += term;
        // terms grow until s(n+s) exceeds (x/2)^2
        if (s as f64) * ((n + s) as f64) > -q && term.abs() <= BESSEL_REL_TOL * sum.abs() {
            break;
        }
        if s > 200 {
            break;
        }
    }
    Ok(sum)
}

/// Fourier coefficients of `sin(A cos θ)` and `cos(A cos θ)` entering the
/// second-order Sine-Gordon balance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimCoefficients {
    pub a1: f64,
    pub a3: f64,
    pub b0: f64,
    pub b2: f64,
    pub b4: f64,
    pub b6: f64,
}

impl LimCoefficients {
    pub fn at(a: f64) -> Result<Self> {
        let b = |i: u32| -> Result<f64> {
            let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(2.0 * sign * bessel_j(2 * i, a)?)
        };
        Ok(LimCoefficients {
            a1: 2.0 * bessel_j(1, a)?,
            a3: -2.0 * bessel_j(3, a)?,
            b0: b(0)?,
            b2: b(1)?,
            b4: b(2)?,
            b6: b(3)?,
        })
    }
}

fn check_order(order: u8) -> Result<()> {
    match order {
        1 | 2 => Ok(()),
        _ => Err(Error::Unsupported("Lim order must be 1 or 2")),
    }
}

fn checked_sqrt(x: f64, what: &'static str) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(what));
    }
    Ok(math::sqrt(x))
}

pub fn lim_duffing_omega(mu: f64, a: f64, order: u8) -> Result<DispersionResult> {
    check_order(order)?;
    let y = mu * a * a;
    let omega = if order == 1 {
        checked_sqrt(1.0 + 0.75 * y, "Lim order 1 requires 1 + 3*mu*A^2/4 >= 0")?
    } else {
        let inner = checked_sqrt(
            1024.0 + 1472.0 * y + 421.0 * y * y,
            "Lim order 2 inner radicand negative",
        )?;
        checked_sqrt(
            (40.0 + 31.0 * y + inner) / 72.0,
            "Lim order 2 outer radicand negative",
        )?
    };
    Ok(DispersionResult::new(omega, Method::Lim(order)))
}

pub fn lim_sine_gordon_omega(a: f64, order: u8) -> Result<DispersionResult> {
    check_order(order)?;
    if !(a > 0.0 && a < core::f64::consts::PI) {
        return Err(Error::Domain("Sine-Gordon requires 0 < A < pi"));
    }
    let omega = if order == 1 {
        checked_sqrt(2.0 * bessel_j(1, a)? / a, "Lim order 1 requires J1(A) >= 0")?
    } else {
        let c = LimCoefficients::at(a)?;
        let b = c.b0 - c.b2 - c.b4 + c.b6;
        let g = (b * a + 18.0 * c.a1 + 2.0 * c.a3) / (36.0 * a);
        let h = c.a1 * b / (18.0 * a);
        let disc = checked_sqrt(g * g - h, "Lim order 2 requires g^2 >= h")?;
        checked_sqrt(g + disc, "Lim order 2 requires g + sqrt(g^2 - h) >= 0")?
    };
    Ok(DispersionResult::new(omega, Method::Lim(order)))
}

/// Pure quartic with unit coefficient, `ü + u³ = 0`.
///
/// For general μ pass the rescaled amplitude `√μ·A`.
pub fn lim_pure_quartic_omega(a: f64, order: u8) -> Result<DispersionResult> {
    check_order(order)?;
    if !(a > 0.0) {
        return Err(Error::Domain("amplitude must be > 0"));
    }
    let factor = if order == 1 {
        0.5 * math::sqrt(3.0)
    } else {
        math::sqrt(62.0 + 2.0 * math::sqrt(421.0)) / 12.0
    };
    Ok(DispersionResult::new(factor * a, Method::Lim(order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn j(n: u32, x: f64) -> f64 {
        bessel_j(n, x).unwrap()
    }

    #[test]
    fn bessel_at_zero() {
        assert_eq!(j(0, 0.0), 1.0);
        for n in 1..=8 {
            assert_eq!(j(n, 0.0), 0.0);
        }
    }

    #[test]
    fn bessel_first_zero_by_bisection() {
        let (mut lo, mut hi) = (2.0, 3.0);
        assert!(j(0, lo) > 0.0 && j(0, hi) < 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if j(0, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 2.404825557695773).abs() < 1e-12);
        assert!(j(0, 2.404826).abs() < 1e-6);
    }

    #[test]
    fn bessel_reference_values() {
        // Abramowitz & Stegun table 9.1
        assert!((j(0, 1.0) - 0.7651976865579666).abs() < 1e-15);
        assert!((j(1, 1.0) - 0.4400505857449335).abs() < 1e-15);
        assert!((j(2, 5.0) - 0.04656511627775222).abs() < 1e-14);
    }

    #[test]
    fn bessel_recurrence() {
        for x in [0.5, 1.0, 2.0, 3.0] {
            for n in 1..=6 {
                let lhs = j(n - 1, x) + j(n + 1, x);
                let rhs = 2.0 * n as f64 / x * j(n, x);
                assert!((lhs - rhs).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn bessel_normalization_sum() {
        // truncating at n = 8 drops 2·Σ_{n≥9} J_n², about 1.3e-11 at x = 2
        // and 1.5e-8 at x = 3
        for (x, tol) in [(0.1, 1e-15), (1.0, 1e-14), (2.0, 1e-10), (3.0, 2e-8)] {
            let s = j(0, x).powi(2) + 2.0 * (1..=8).map(|n| j(n, x).powi(2)).sum::<f64>();
            assert!((s - 1.0).abs() < tol, "x={x}");
        }
    }

    #[test]
    fn bessel_domain() {
        assert!(bessel_j(9, 1.0).is_err());
        assert!(bessel_j(0, 20.5).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
        assert!(bessel_j(0, -20.0).is_ok());
    }

    #[test]
    fn lim_duffing_values() {
        assert_eq!(lim_duffing_omega(0.0, 1.0, 2).unwrap().omega_cap, 1.0);
        let expected = ((71.0 + 2917f64.sqrt()) / 72.0).sqrt();
        let got = lim_duffing_omega(1.0, 1.0, 2).unwrap().omega_cap;
        assert_eq!(got, expected);
        assert!((got - 1.3176644872313281).abs() < 1e-15);
        assert!(lim_duffing_omega(-1.0, 1.0, 2).is_err());
        assert!(lim_duffing_omega(1.0, 1.0, 3).is_err());
    }

    #[test]
    fn lim_sine_gordon_values() {
        let om1 = lim_sine_gordon_omega(PI / 2.0, 1).unwrap().omega_cap;
        assert!((om1 - 0.8495309558241173).abs() < 1e-15);
        for order in [1, 2] {
            let om = lim_sine_gordon_omega(1e-4, order).unwrap().omega_cap;
            assert!((om - 1.0).abs() < 1e-6);
        }
        // g^2 - h stays positive across the whole domain
        for i in 1..1000 {
            let a = PI * i as f64 / 1000.0;
            assert!(lim_sine_gordon_omega(a, 2).is_ok(), "A={a}");
        }
        assert!(lim_sine_gordon_omega(PI, 1).is_err());
    }

    #[test]
    fn lim_pure_quartic_values() {
        assert!((lim_pure_quartic_omega(2.0, 1).unwrap().omega_cap - 3f64.sqrt()).abs() < 1e-15);
        let o2 = lim_pure_quartic_omega(1.0, 2).unwrap().omega_cap;
        assert!((o2 - 0.8458910861127716).abs() < 1e-15);
        for order in [1, 2] {
            let a = lim_pure_quartic_omega(0.7, order).unwrap().omega_cap;
            let b = lim_pure_quartic_omega(1.4, order).unwrap().omega_cap;
            assert!((b - 2.0 * a).abs() < 1e-15);
        }
    }
}
