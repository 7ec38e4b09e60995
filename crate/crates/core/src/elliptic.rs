//! Complete elliptic integral of the first kind,
//!
//! ```text
//! K(m) = ∫₀^{π/2} (1 − m sin²t)^{−1/2} dt
//! ```
//!
//! evaluated by the arithmetic-geometric mean, together with the Landen
//! transformations and the delta-expansion series `K_N(m)` built around the
//! solvable integrand `(1 − m/2)^{−1/2}`.

use core::f64::consts::FRAC_PI_2;

use crate::math;
use crate::model::LdeOrder;
use crate::{Error, Result};

const AGM_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;

/// Parameter `m` of `K(m)` (not the modulus `k = √m`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticParam(pub f64);

impl EllipticParam {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<f64> for EllipticParam {
    fn from(m: f64) -> Self {
        EllipticParam(m)
    }
}

/// `K(m) = π / (2·AGM(1, √(1−m)))` for any `m < 1`, including negative `m`.
pub fn agm_k(m: EllipticParam) -> Result<f64> {
    let m = m.0;
    if !(m < 1.0) || m.is_nan() {
        return Err(Error::Domain("K(m) requires m < 1"));
    }
    let mut a = 1.0;
    let mut b = math::sqrt(1.0 - m);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            return Ok(FRAC_PI_2 / a);
        }
        let next = 0.5 * (a + b);
        b = math::sqrt(a * b);
        a = next;
    }
    Err(Error::NonConvergence("AGM iteration"))
}

fn check_unit_interval(m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain("Landen transformation requires 0 <= m <= 1"));
    }
    Ok(())
}

/// Ascending Landen map `m' = 4√m / (1+√m)²`, with `m' ≥ m` on `[0, 1]`.
///
/// `K(m) = K(m') / (1 + √m)`. Both ends of `[0, 1]` are fixed points.
pub fn landen_ascend(m: EllipticParam) -> Result<EllipticParam> {
    check_unit_interval(m.0)?;
    let r = math::sqrt(m.0);
    let d = 1.0 + r;
    Ok(EllipticParam(4.0 * r / (d * d)))
}

/// Inverse Landen map `(−2 + 2√(1−m) + m)² / m²`.
///
/// Evaluated as `(m / (1+√(1−m))²)²`, which is algebraically identical and
/// free of the 0/0 at small `m` (it tends to `m²/16`).
pub fn landen_descend(m: EllipticParam) -> Result<EllipticParam> {
    check_unit_interval(m.0)?;
    let s = math::sqrt(1.0 - m.0);
    let d = 1.0 + s;
    let q = m.0 / (d * d);
    Ok(EllipticParam(q * q))
}

/// Delta-expansion series for `K(m)` at order `N` with `λ = −m/2`, `δ = 1`:
///
/// ```text
/// K_N(m) = (π/2) Σ_{k=0}^{N} Σ_{j=0}^{k}
///          Γ(j+½) / (j!² (k−j)! Γ(½−k)) · (−1)^j m^k / (2^{k−j} (1−m/2)^{k+½})
/// ```
///
/// The inner sum vanishes for odd `k`, so `K_{2n+1} = K_{2n}`.
///
/// Coefficients are built by recurrence rather than Gamma calls:
/// `a_j = (−1)^j Γ(j+½)/(√π j!²)`, `b_k = √π/Γ(½−k)`, `d_i = 1/(i! 2^i)`.
pub fn k_lde_series(m: EllipticParam, order: LdeOrder) -> Result<f64> {
    let m = m.0;
    if !(m < 2.0) || m.is_nan() {
        return Err(Error::Domain("K_N series requires m < 2"));
    }
    let base = 1.0 - 0.5 * m;
    let ratio = m / base;

    let mut total = 0.0;
    // b_k r^k
    let mut outer = 1.0;
    // d_k, carried across k
    let mut d_top = 1.0;
    for k in 0..=order.get() {
        if k > 0 {
            outer *= (0.5 - k as f64) * ratio;
            d_top /= 2.0 * k as f64;
        }
        let mut a = 1.0;
        let mut d = d_top;
        let mut inner = a * d;
        for j in 1..=k {
            a *= -(j as f64 - 0.5) / (j as f64 * j as f64);
            // d_{k-j} from d_{k-j+1}
            d *= 2.0 * (k - j + 1) as f64;
            inner += a * d;
        }
        total += outer * inner;
    }
    Ok(FRAC_PI_2 * total / math::sqrt(base))
}

/// One inverse-Landen step followed by the series:
/// `K(m) ≈ (2(1−√(1−m))/m) · K_N(f⁻¹(m))`.
///
/// The prefactor is evaluated as `2/(1+√(1−m))`, which equals 1 at `m = 0`.
pub fn k_lde_improved(m: EllipticParam, order: LdeOrder) -> Result<f64> {
    if !(0.0..1.0).contains(&m.0) {
        return Err(Error::Domain("improved K_N series requires 0 <= m < 1"));
    }
    let s = math::sqrt(1.0 - m.0);
    let prefactor = 2.0 / (1.0 + s);
    Ok(prefactor * k_lde_series(landen_descend(m)?, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn order(n: usize) -> LdeOrder {
        LdeOrder::new(n).unwrap()
    }

    /// Composite Simpson on the defining integral; independent of the AGM.
    fn k_by_quadrature(m: f64) -> f64 {
        let n = 20_000;
        let h = FRAC_PI_2 / n as f64;
        let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
        let mut s = f(0.0) + f(FRAC_PI_2);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn agm_reference_values() {
        assert_eq!(agm_k(EllipticParam(0.0)).unwrap(), FRAC_PI_2);
        let k_half = agm_k(EllipticParam(0.5)).unwrap();
        let k_quarter = agm_k(EllipticParam(0.25)).unwrap();
        assert!((k_half - k_by_quadrature(0.5)).abs() < 1e-12);
        assert!((k_quarter - k_by_quadrature(0.25)).abs() < 1e-12);
        assert!((k_half - 1.854074677301372).abs() < 1e-14);
        assert!((k_quarter - 1.685750354812596).abs() < 1e-14);
        // negative parameter
        assert!((agm_k(EllipticParam(-0.5)).unwrap() - k_by_quadrature(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn agm_domain() {
        assert!(matches!(agm_k(EllipticParam(1.0)), Err(Error::Domain(_))));
        assert!(agm_k(EllipticParam(f64::NAN)).is_err());
    }

    #[test]
    fn landen_maps() {
        assert_eq!(landen_ascend(EllipticParam(0.0)).unwrap().0, 0.0);
        assert_eq!(landen_ascend(EllipticParam(1.0)).unwrap().0, 1.0);
        assert!((landen_ascend(EllipticParam(0.25)).unwrap().0 - 8.0 / 9.0).abs() < 1e-15);
        assert!((landen_descend(EllipticParam(8.0 / 9.0)).unwrap().0 - 0.25).abs() < 1e-15);
        let tiny = 1e-9;
        let d = landen_descend(EllipticParam(tiny)).unwrap().0;
        assert!((d / (tiny * tiny / 16.0) - 1.0).abs() < 1e-8);
        // direct evaluation of the printed form at m = 1/2
        let m: f64 = 0.5;
        let printed = ((-2.0 + 2.0 * (1.0 - m).sqrt() + m) / m).powi(2);
        let d = landen_descend(EllipticParam(m)).unwrap().0;
        assert!((d - printed).abs() < 1e-15);
        assert!((d - 0.029437251522859413).abs() < 1e-16);
        assert!(landen_ascend(EllipticParam(-0.1)).is_err());
        assert!(landen_descend(EllipticParam(1.5)).is_err());
    }

    #[test]
    fn landen_identity() {
        for i in 1..=9 {
            let m = i as f64 / 10.0;
            let k = agm_k(EllipticParam(m)).unwrap();
            let up = landen_ascend(EllipticParam(m)).unwrap();
            let via = agm_k(up).unwrap() / (1.0 + m.sqrt());
            assert!((k - via).abs() <= 1e-12 * k, "m={m}");
        }
    }

    #[test]
    fn series_low_order_and_zero() {
        for m in [-0.5, 0.0, 0.3, 0.9] {
            let n0 = k_lde_series(EllipticParam(m), order(0)).unwrap();
            assert!((n0 - FRAC_PI_2 / (1.0 - m / 2.0).sqrt()).abs() < 1e-15);
        }
        for n in [0, 1, 5, 30] {
            assert_eq!(
                k_lde_series(EllipticParam(0.0), order(n)).unwrap(),
                FRAC_PI_2
            );
            assert_eq!(
                k_lde_improved(EllipticParam(0.0), order(n)).unwrap(),
                FRAC_PI_2
            );
        }
        assert!(k_lde_series(EllipticParam(2.0), order(1)).is_err());
        assert!(k_lde_improved(EllipticParam(1.0), order(1)).is_err());
    }

    #[test]
    fn series_converges_to_agm() {
        let exact = agm_k(EllipticParam(0.5)).unwrap();
        let n10 = k_lde_series(EllipticParam(0.5), order(10)).unwrap();
        // residual at N=10 is about -1.37e-7
        assert!((n10 - exact).abs() < 2e-7);
        assert!((n10 - exact).abs() > 1e-7);
        for i in 1..=9 {
            let m = i as f64 / 10.0;
            let exact = agm_k(EllipticParam(m)).unwrap();
            let mut prev = f64::INFINITY;
            for n in 0..=10 {
                let err = (k_lde_series(EllipticParam(m), order(n)).unwrap() - exact).abs();
                assert!(err <= prev * (1.0 + 1e-9), "m={m} n={n}");
                prev = err;
            }
        }
    }

    #[test]
    fn odd_orders_repeat_even_orders() {
        for m in [0.2, 0.6, 0.95] {
            for n in [0, 2, 4, 10] {
                let even = k_lde_series(EllipticParam(m), order(n)).unwrap();
                let odd = k_lde_series(EllipticParam(m), order(n + 1)).unwrap();
                assert!((even - odd).abs() <= 1e-13 * even);
            }
        }
    }

    #[test]
    fn improved_beats_plain_series() {
        for m in [0.5, 0.8, 0.95] {
            let exact = agm_k(EllipticParam(m)).unwrap();
            for n in 1..=3 {
                let plain = (k_lde_series(EllipticParam(m), order(n)).unwrap() - exact).abs();
                let improved = (k_lde_improved(EllipticParam(m), order(n)).unwrap() - exact).abs();
                assert!(improved <= plain, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn improved_first_order_closed_form() {
        for i in 0..50 {
            let m = i as f64 / 50.0;
            let closed = PI / (1.0 - m / 2.0 + 3.0 * (1.0 - m).sqrt()).sqrt();
            let got = k_lde_improved(EllipticParam(m), order(1)).unwrap();
            assert!((got - closed).abs() <= 1e-13 * closed, "m={m}");
        }
    }

    #[test]
    fn high_order_stays_finite() {
        for m in [0.1, 0.9, 0.999] {
            let v = k_lde_improved(EllipticParam(m), order(30)).unwrap();
            assert!(v.is_finite());
        }
    }

    proptest! {
        #[test]
        fn ascend_inverts_descend(m in 1e-6f64..(1.0 - 1e-6)) {
            let back = landen_ascend(landen_descend(EllipticParam(m)).unwrap()).unwrap();
            prop_assert!((back.0 - m).abs() <= 1e-12);
        }

        #[test]
        fn ascend_increases(m in 1e-6f64..(1.0 - 1e-6)) {
            prop_assert!(landen_ascend(EllipticParam(m)).unwrap().0 > m);
        }
    }
}
