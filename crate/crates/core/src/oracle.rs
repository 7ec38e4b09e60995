//! Ground-truth Ω(A) by three independent routes:
//!
//! * quadrature of the period integral `T = ∫_{−A}^{A} √2 / √(V(A) − V(u)) du`,
//! * direct integration of `ü + V'(u) = 0` and timing of the first return,
//! * elliptic-integral closed forms (all three potentials admit one).
//!
//! In each case `Ω = 2π/T`.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::elliptic::{agm_k, EllipticParam};
use crate::math;
use crate::model::{DispersionResult, Method, Potential};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the period.
    pub abs_tol: f64,
    /// Maximum number of panel doublings.
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            max_refinements: 20,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidSpec("quadrature tolerance must be > 0"));
        }
        if self.max_refinements < 1 {
            return Err(Error::InvalidSpec("max_refinements must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    /// Step size as a fraction of the estimated period.
    pub step_fraction: f64,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            step_fraction: 1e-4,
            max_steps: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodResult {
    /// Period in the oscillator's own time (Ω = 1).
    pub period: f64,
    pub estimated_error: f64,
}

impl PeriodResult {
    pub fn omega(&self) -> f64 {
        2.0 * PI / self.period
    }
}

const GL_POINTS: usize = 20;

/// Gauss-Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
struct GaussLegendre {
    nodes: [f64; GL_POINTS],
    weights: [f64; GL_POINTS],
}

impl GaussLegendre {
    fn new() -> Self {
        let n = GL_POINTS;
        let mut nodes = [0.0; GL_POINTS];
        let mut weights = [0.0; GL_POINTS];
        for i in 0..n.div_ceil(2) {
            let mut x = math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    fn composite(&self, f: &impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
        let width = (hi - lo) / panels as f64;
        let half = 0.5 * width;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * width;
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + half * x);
            }
            total += s * half;
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0
    } else {
        math::sin(x) / x
    }
}

/// `(V(A) − V(A sin φ)) / cos²φ`, written per potential so that no
/// cancellation occurs near the turning point φ = π/2.
fn reduced_gap(p: &Potential, a: f64, phi: f64) -> f64 {
    let s = math::sin(phi);
    match *p {
        Potential::Duffing { mu } => a * a * (0.5 + 0.25 * mu * a * a * (1.0 + s * s)),
        Potential::PureQuartic { mu } => 0.25 * mu * a * a * a * a * (1.0 + s * s),
        Potential::SineGordon => {
            // cos u − cos A = 2 sin((A+u)/2) sin((A−u)/2), A − u = A cos²φ/(1+s)
            let u = a * s;
            let w = 0.5 * a / (1.0 + s);
            let c = math::cos(phi);
            2.0 * math::sin(0.5 * (a + u)) * w * sinc(w * c * c)
        }
    }
}

/// Period by quadrature after `u = A sin φ`:
/// `T = 2√2 A ∫₀^{π/2} G(φ)^{−1/2} dφ` with `G` the reduced gap. The
/// integrand is smooth on the closed interval; composite Gauss-Legendre with
/// panel doubling until successive estimates agree to `abs_tol`.
pub fn period_quadrature(p: &Potential, a: f64, cfg: &QuadratureConfig) -> Result<PeriodResult> {
    p.check_amplitude(a)?;
    cfg.validate()?;
    let prefactor = 2.0 * math::sqrt(2.0) * a;
    let integrand = |phi: f64| {
        let g = reduced_gap(p, a, phi);
        if g > 0.0 {
            prefactor / math::sqrt(g)
        } else {
            f64::NAN
        }
    };
    let rule = GaussLegendre::new();
    let mut prev = rule.composite(&integrand, 0.0, FRAC_PI_2, 1);
    if prev.is_nan() {
        return Err(Error::Domain("V(A) - V(u) <= 0 inside (-A, A)"));
    }
    for level in 1..=cfg.max_refinements {
        let cur = rule.composite(&integrand, 0.0, FRAC_PI_2, 1usize << level);
        if cur.is_nan() {
            return Err(Error::Domain("V(A) - V(u) <= 0 inside (-A, A)"));
        }
        let err = (cur - prev).abs();
        if err <= cfg.abs_tol {
            return Ok(PeriodResult {
                period: cur,
                estimated_error: err,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence("quadrature refinement limit reached"))
}

/// `Ω = π / (√2 ∫₀^A [V(A) − V(u)]^{−1/2} du) = 2π/T`.
pub fn omega_exact(p: &Potential, a: f64, cfg: &QuadratureConfig) -> Result<DispersionResult> {
    let t = period_quadrature(p, a, cfg)?;
    Ok(DispersionResult::new(t.omega(), Method::Exact))
}

/// `Ω = π / (2K(sin²(A/2)))`.
pub fn omega_exact_sine_gordon(a: f64) -> Result<DispersionResult> {
    if !(a > 0.0 && a < PI) {
        return Err(Error::Domain("Sine-Gordon requires 0 < A < pi"));
    }
    let s = math::sin(0.5 * a);
    let k = agm_k(EllipticParam(s * s))?;
    Ok(DispersionResult::new(PI / (2.0 * k), Method::Exact))
}

/// Closed forms through `K`:
///
/// * Duffing: `Ω = π√(1+μA²) / (2K(m))`, `m = μA²/(2(1+μA²))`
/// * Sine-Gordon: `Ω = π / (2K(sin²(A/2)))`
/// * pure quartic: `Ω = π√μ A / (2K(1/2))`
pub fn omega_exact_elliptic(p: &Potential, a: f64) -> Result<DispersionResult> {
    p.check_amplitude(a)?;
    let omega = match *p {
        Potential::Duffing { mu } => {
            let y = mu * a * a;
            let m = y / (2.0 * (1.0 + y));
            PI * math::sqrt(1.0 + y) / (2.0 * agm_k(EllipticParam(m))?)
        }
        Potential::SineGordon => return omega_exact_sine_gordon(a),
        Potential::PureQuartic { mu } => {
            PI * math::sqrt(mu) * a / (2.0 * agm_k(EllipticParam(0.5))?)
        }
    };
    Ok(DispersionResult::new(omega, Method::Exact))
}

fn rk4_step(p: &Potential, (u, v): (f64, f64), h: f64) -> (f64, f64) {
    let k1u = v;
    let k1v = -p.force(u);
    let k2u = v + 0.5 * h * k1v;
    let k2v = -p.force(u + 0.5 * h * k1u);
    let k3u = v + 0.5 * h * k2v;
    let k3v = -p.force(u + 0.5 * h * k2u);
    let k4u = v + h * k3v;
    let k4v = -p.force(u + h * k3u);
    (
        u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

const EVENT_TIME_TOL: f64 = 1e-10;

/// Period by integrating `ü = −V'(u)`, `u(0) = A`, `u̇(0) = 0` with classical
/// RK4 and locating the first return to `u̇ = 0` with `u > 0`.
///
/// The crossing is bracketed by a sign change of `u̇` (positive to
/// non-positive), then refined inside the step by one bisection and Newton
/// iterations on `u̇(τ)`, using `d u̇/dτ = −V'(u)`.
pub fn period_ode(p: &Potential, a: f64, cfg: &OdeConfig) -> Result<PeriodResult> {
    p.check_amplitude(a)?;
    if !(cfg.step_fraction > 0.0) {
        return Err(Error::InvalidSpec("ODE step must be > 0"));
    }
    // secant stiffness V'(A)/A gives the period scale
    let stiffness = p.force(a) / a;
    if !(stiffness > 0.0) {
        return Err(Error::Domain("no restoring force at the turning point"));
    }
    let h = cfg.step_fraction * 2.0 * PI / math::sqrt(stiffness);

    let mut t = 0.0;
    let mut state = (a, 0.0);
    for _ in 0..cfg.max_steps {
        let next = rk4_step(p, state, h);
        if state.1 > 0.0 && next.1 <= 0.0 && next.0 > 0.0 {
            let (tau, err) = polish_crossing(p, state, h);
            return Ok(PeriodResult {
                period: t + tau,
                estimated_error: err,
            });
        }
        state = next;
        t += h;
    }
    Err(Error::NonConvergence("no period found within max_steps"))
}

fn polish_crossing(p: &Potential, start: (f64, f64), h: f64) -> (f64, f64) {
    let velocity = |tau: f64| rk4_step(p, start, tau);
    let mut tau = 0.5 * h;
    let mid = velocity(tau).1;
    let (mut lo, mut hi) = if mid > 0.0 { (tau, h) } else { (0.0, tau) };
    tau = 0.5 * (lo + hi);
    let mut last = h;
    for _ in 0..20 {
        let (u, v) = velocity(tau);
        if v > 0.0 {
            lo = tau;
        } else {
            hi = tau;
        }
        let slope = -p.force(u);
        let mut next = tau - v / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        last = (next - tau).abs();
        tau = next;
        if last < EVENT_TIME_TOL {
            break;
        }
    }
    (tau, last)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTIC_PERIOD: f64 = 7.416298709205487;

    fn quad(p: Potential, a: f64) -> f64 {
        period_quadrature(&p, a, &QuadratureConfig::default())
            .unwrap()
            .period
    }

    fn ode(p: Potential, a: f64) -> f64 {
        period_ode(&p, a, &OdeConfig::default()).unwrap().period
    }

    /// Midpoint rule on `4√2 ∫₀¹ (1 − s⁴)^{−1/2} ds` after `s = 1 − t²`, an
    /// independent brute-force route to the pure quartic period.
    fn quartic_period_brute_force() -> f64 {
        let n = 400_000;
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let t = (i as f64 + 0.5) * h;
            let s = 1.0 - t * t;
            // 1 − s⁴ = (1 − s)(1 + s)(1 + s²), 1 − s = t²
            let denom = (t * t * (1.0 + s) * (1.0 + s * s)).sqrt();
            acc += 2.0 * t / denom;
        }
        4.0 * 2f64.sqrt() * acc * h
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = GaussLegendre::new();
        let weight_sum: f64 = rule.weights.iter().sum();
        assert!((weight_sum - 2.0).abs() < 1e-14);
        let v = rule.composite(&|x: f64| x.powi(38), 0.0, 1.0, 1);
        assert!((v - 1.0 / 39.0).abs() < 1e-15);
    }

    #[test]
    fn harmonic_period() {
        let t = quad(Potential::Duffing { mu: 0.0 }, 1.0);
        assert!((t - 2.0 * PI).abs() < 1e-13);
        let t = ode(Potential::Duffing { mu: 0.0 }, 1.0);
        assert!((t - 2.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn quartic_and_sine_gordon_period() {
        let brute = quartic_period_brute_force();
        assert!((brute - QUARTIC_PERIOD).abs() < 1e-9);
        let t = quad(Potential::PureQuartic { mu: 1.0 }, 1.0);
        assert!((t - QUARTIC_PERIOD).abs() < 1e-12);
        let t = quad(Potential::SineGordon, PI / 2.0);
        let four_k_half = 4.0 * agm_k(EllipticParam(0.5)).unwrap();
        assert!((t - four_k_half).abs() < 1e-12);
        assert!((ode(Potential::PureQuartic { mu: 1.0 }, 1.0) - QUARTIC_PERIOD).abs() < 1e-6);
        assert!((ode(Potential::SineGordon, PI / 2.0) - QUARTIC_PERIOD).abs() < 1e-6);
    }

    #[test]
    fn exact_omega_values() {
        let cfg = QuadratureConfig::default();
        let d = omega_exact(&Potential::Duffing { mu: 1.0 }, 1.0, &cfg)
            .unwrap()
            .omega_cap;
        let closed = PI * 2f64.sqrt() / (2.0 * 1.685750354812596);
        assert!((d - closed).abs() < 1e-9);
        assert!((d - 1.317776).abs() < 1e-6);
        let q = omega_exact(&Potential::PureQuartic { mu: 1.0 }, 1.0, &cfg)
            .unwrap()
            .omega_cap;
        assert!((q - 2.0 * PI / QUARTIC_PERIOD).abs() < 1e-12);
        assert!((q - 0.847213).abs() < 1e-6);
        for p in [Potential::Duffing { mu: 3.0 }, Potential::SineGordon] {
            let om = omega_exact(&p, 1e-4, &cfg).unwrap().omega_cap;
            assert!((om - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn sine_gordon_elliptic_form() {
        let om = omega_exact_sine_gordon(PI / 2.0).unwrap().omega_cap;
        assert!((om - PI / (2.0 * 1.854074677301372)).abs() < 1e-14);
        let om3 = omega_exact_sine_gordon(3.0).unwrap().omega_cap;
        assert!((om3 - 0.3889183246903108).abs() < 1e-14);
        assert!((omega_exact_sine_gordon(1e-8).unwrap().omega_cap - 1.0).abs() < 1e-15);
        assert!(omega_exact_sine_gordon(PI).is_err());
    }

    #[test]
    fn quadrature_matches_elliptic_forms() {
        let cfg = QuadratureConfig::default();
        let cases = [
            (Potential::Duffing { mu: 1.0 }, 1.0),
            (Potential::Duffing { mu: -0.9 }, 1.0),
            (Potential::Duffing { mu: 100.0 }, 1.0),
            (Potential::SineGordon, 0.5),
            (Potential::SineGordon, 3.0),
            (Potential::PureQuartic { mu: 2.5 }, 0.7),
        ];
        for (p, a) in cases {
            let q = omega_exact(&p, a, &cfg).unwrap().omega_cap;
            let e = omega_exact_elliptic(&p, a).unwrap().omega_cap;
            assert!((q - e).abs() <= 1e-10 * e, "{p:?} A={a}");
        }
    }

    #[test]
    fn ode_matches_quadrature() {
        let cases = [
            (Potential::Duffing { mu: 1.0 }, 2.0),
            (Potential::Duffing { mu: -0.5 }, 1.2),
            (Potential::SineGordon, 3.0),
            (Potential::PureQuartic { mu: 1.0 }, 0.3),
        ];
        for (p, a) in cases {
            let tq = quad(p, a);
            let to = ode(p, a);
            assert!((tq - to).abs() <= 1e-6 * tq, "{p:?} A={a}");
        }
    }

    #[test]
    fn domain_and_convergence_errors() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            period_quadrature(&Potential::Duffing { mu: -1.0 }, 1.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(period_quadrature(&Potential::SineGordon, 3.2, &cfg).is_err());
        let strict = QuadratureConfig {
            abs_tol: 1e-300,
            max_refinements: 2,
        };
        assert!(matches!(
            period_quadrature(&Potential::SineGordon, 3.1, &strict),
            Err(Error::NonConvergence(_))
        ));
        let short = OdeConfig {
            step_fraction: 1e-4,
            max_steps: 100,
        };
        assert!(matches!(
            period_ode(&Potential::SineGordon, 1.0, &short),
            Err(Error::NonConvergence(_))
        ));
    }

    #[test]
    fn pure_quartic_frequency_is_linear_in_amplitude() {
        let cfg = QuadratureConfig::default();
        let p = Potential::PureQuartic { mu: 1.0 };
        let base = omega_exact(&p, 0.8, &cfg).unwrap().omega_cap;
        for c in [2.0, 5.0] {
            let scaled = omega_exact(&p, 0.8 * c, &cfg).unwrap().omega_cap;
            assert!((scaled - c * base).abs() <= 1e-9 * scaled);
        }
    }

    #[test]
    fn duffing_hardening_is_monotone() {
        let cfg = QuadratureConfig::default();
        let p = Potential::Duffing { mu: 0.7 };
        let mut prev = 0.0;
        for i in 1..=30 {
            let om = omega_exact(&p, 0.2 * i as f64, &cfg).unwrap().omega_cap;
            assert!(om > prev);
            prev = om;
        }
    }
}
