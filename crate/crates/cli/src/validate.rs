//! Cross-oracle and regression suite behind `nlkg validate`.
//!
//! Each group is a list of named checks; a group passes when all of its
//! checks pass.

use std::f64::consts::PI;

use nlkg_core::analysis::{run_sweep, Axis, SweepSpec};
use nlkg_core::baselines::{lim_duffing_omega, lim_pure_quartic_omega};
use nlkg_core::elliptic::{
    agm_k, k_lde_improved, k_lde_series, landen_ascend, landen_descend, EllipticParam,
};
use nlkg_core::lde::{duffing_omega_lde, pure_quartic_omega_lde, sine_gordon_omega_lde};
use nlkg_core::oracle::{
    omega_exact, omega_exact_sine_gordon, period_ode, period_quadrature, OdeConfig,
    QuadratureConfig,
};
use nlkg_core::{dispersion::dispersion, LdeOrder, Method, Potential};

/// Closed forms printed alongside the series, transcribed verbatim. They
/// serve only as regression oracles for the general-order code paths.
pub mod printed {
    /// Duffing, first order: `√(1 + 3μA²/4)`.
    pub fn duffing_first(y: f64) -> f64 {
        (1.0 + 0.75 * y).sqrt()
    }

    /// Duffing, second order.
    pub fn duffing_second(y: f64) -> f64 {
        let d = 4.0 + 3.0 * y;
        d.sqrt()
            / (2.0
                * (1.0
                    + 3.0 * y.powi(2) * (1024.0 + y * (1536.0 + 611.0 * y)) / (1024.0 * d.powi(4))))
    }

    /// Duffing, third order.
    pub fn duffing_third(y: f64) -> f64 {
        let d = 4.0 + 3.0 * y;
        let num = 3.0
            * y.powi(2)
            * (385.0 * y.powi(4) + 560.0 * y.powi(2) * d.powi(2) + 1024.0 * d.powi(4));
        d.sqrt() / (2.0 * (1.0 + num / (16384.0 * d.powi(6))))
    }

    /// Pure quartic (μ = 1) at orders 1, 2, 3, per unit amplitude.
    pub fn pure_quartic(order: usize) -> f64 {
        let s3 = 3f64.sqrt();
        match order {
            1 => 24.0 * s3 / 49.0,
            2 => 13824.0 * s3 / 28259.0,
            3 => 1990656.0 * s3 / 4069681.0,
            _ => panic!("no printed pure quartic form at order {order}"),
        }
    }

    /// Sine-Gordon, first order.
    pub fn sine_gordon_first(a: f64) -> f64 {
        0.25 * (a.cos() + 12.0 * (a / 2.0).cos().abs() + 3.0).sqrt()
    }

    /// Sine-Gordon, second order.
    pub fn sine_gordon_second(a: f64) -> f64 {
        let c2 = (a / 2.0).cos();
        let c4 = (a / 4.0).cos();
        let num = 16.0
            * c4.powi(2)
            * (3.0 + 12.0 * c2 + a.cos()).powi(2)
            * (2.0 + 2.0 * c2 / c4.powi(4)).sqrt();
        let den = 2713.0
            + 2520.0 * c2
            + 2580.0 * a.cos()
            + 360.0 * (1.5 * a).cos()
            + 19.0 * (2.0 * a).cos();
        num / den
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Group {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Group {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn new(name: &'static str) -> Self {
        Group {
            name,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Relative agreement check; errors count as failures.
    fn close(
        &mut self,
        name: impl Into<String>,
        got: nlkg_core::Result<f64>,
        expected: f64,
        tol: f64,
    ) {
        match got {
            Ok(v) => {
                let rel = ((v - expected) / expected).abs();
                self.check(
                    name,
                    rel <= tol,
                    format!("rel err {rel:.3e} (tol {tol:.0e})"),
                );
            }
            Err(e) => self.check(name, false, e.to_string()),
        }
    }
}

fn order(n: usize) -> LdeOrder {
    LdeOrder::new(n).expect("order within limit")
}

fn lde_omega(p: Potential, a: f64, n: usize) -> nlkg_core::Result<f64> {
    dispersion(p, a, Method::Lde(n), 1e-12)
}

/// The 20 (potential, amplitude) pairs used for quadrature vs ODE agreement.
pub fn oracle_pairs() -> Vec<(Potential, f64)> {
    let mut v = Vec::new();
    for a in [0.5, 1.0, 2.0, 3.0] {
        v.push((Potential::Duffing { mu: 1.0 }, a));
    }
    for a in [0.5, 1.0, 1.3] {
        v.push((Potential::Duffing { mu: -0.5 }, a));
    }
    for a in [1.0, 3.0] {
        v.push((Potential::Duffing { mu: 10.0 }, a));
    }
    v.push((Potential::Duffing { mu: 100.0 }, 1.0));
    v.push((Potential::Duffing { mu: 0.0 }, 1.0));
    for a in [0.3, 1.0, 2.0, 2.8, 3.05] {
        v.push((Potential::SineGordon, a));
    }
    for a in [0.2, 1.0, 4.0] {
        v.push((Potential::PureQuartic { mu: 1.0 }, a));
    }
    v.push((Potential::PureQuartic { mu: 3.0 }, 2.0));
    v
}

fn linear_limit(tol: f64) -> Group {
    let mut g = Group::new("linear-limit");
    let a = 1e-4;
    let mut methods = vec![Method::Exact, Method::Lim(1), Method::Lim(2)];
    methods.extend((0..=6).map(Method::Lde));
    for p in [Potential::Duffing { mu: 1.0 }, Potential::SineGordon] {
        for &m in &methods {
            let got = dispersion(p, a, m, tol);
            let ok = matches!(got, Ok(v) if (v - 1.0).abs() <= 1e-6);
            g.check(
                format!("{} {m} at A=1e-4", p.name()),
                ok,
                format!("{got:?}"),
            );
        }
    }
    g
}

fn oracle_agreement(tol: f64) -> Group {
    let mut g = Group::new("oracle-agreement");
    let qcfg = QuadratureConfig::with_tol(tol);
    let ocfg = OdeConfig::default();
    for (p, a) in oracle_pairs() {
        let quad = period_quadrature(&p, a, &qcfg).map(|r| r.period);
        let ode = period_ode(&p, a, &ocfg).map(|r| r.period);
        let name = format!("quadrature vs ODE {p:?} A={a}");
        match (quad, ode) {
            (Ok(q), o) => g.close(name, o, q, 1e-6),
            (Err(e), _) => g.check(name, false, e.to_string()),
        }
    }
    for a in [0.5, 1.0, 2.0, 3.0] {
        let name = format!("quadrature vs elliptic sine-gordon A={a}");
        match omega_exact_sine_gordon(a) {
            Ok(e) => g.close(
                name,
                omega_exact(&Potential::SineGordon, a, &qcfg).map(|r| r.omega_cap),
                e.omega_cap,
                1e-9,
            ),
            Err(e) => g.check(name, false, e.to_string()),
        }
    }
    g
}

fn elliptic_identities() -> Group {
    let mut g = Group::new("elliptic-identities");
    for i in 1..=9 {
        let m = i as f64 / 10.0;
        let lhs = agm_k(EllipticParam(m));
        let rhs = landen_ascend(EllipticParam(m))
            .and_then(agm_k)
            .map(|k| k / (1.0 + m.sqrt()));
        match lhs {
            Ok(k) => g.close(format!("Landen identity m={m}"), rhs, k, 1e-12),
            Err(e) => g.check(format!("Landen identity m={m}"), false, e.to_string()),
        }
        let back = landen_descend(EllipticParam(m))
            .and_then(landen_ascend)
            .map(|p| p.0);
        g.close(format!("ascend(descend(m)) m={m}"), back, m, 1e-12);
    }
    for i in 0..20 {
        let m = i as f64 / 20.0;
        let closed = PI / (1.0 - m / 2.0 + 3.0 * (1.0 - m).sqrt()).sqrt();
        g.close(
            format!("improved K order 1 closed form m={m}"),
            k_lde_improved(EllipticParam(m), order(1)),
            closed,
            1e-13,
        );
    }
    for m in [0.5, 0.8, 0.95] {
        let exact = agm_k(EllipticParam(m)).unwrap_or(f64::NAN);
        for n in 1..=3 {
            let plain = k_lde_series(EllipticParam(m), order(n)).map(|v| (v - exact).abs());
            let improved = k_lde_improved(EllipticParam(m), order(n)).map(|v| (v - exact).abs());
            let ok = matches!((plain, improved), (Ok(p), Ok(i)) if i <= p);
            g.check(
                format!("Landen improvement m={m} N={n}"),
                ok,
                format!("plain {plain:?} improved {improved:?}"),
            );
        }
    }
    g
}

fn closed_form_regressions() -> Group {
    let mut g = Group::new("closed-form-regressions");
    type Form = fn(f64) -> f64;
    for y in [0.1, 1.0, 10.0, 100.0] {
        let forms: [(usize, Form); 3] = [
            (0, printed::duffing_first),
            (2, printed::duffing_second),
            (3, printed::duffing_third),
        ];
        for (n, form) in forms {
            g.close(
                format!("duffing N={n} muA2={y}"),
                duffing_omega_lde(y, 1.0, order(n)).map(|r| r.omega_cap),
                form(y),
                1e-12,
            );
        }
    }
    for n in 1..=3 {
        g.close(
            format!("pure quartic N={n} A=1"),
            pure_quartic_omega_lde(1.0, 1.0, order(n)).map(|r| r.omega_cap),
            printed::pure_quartic(n),
            1e-14,
        );
    }
    for a in [0.5, 1.0, 2.0, 3.0] {
        g.close(
            format!("sine-gordon N=1 A={a}"),
            sine_gordon_omega_lde(a, order(1)).map(|r| r.omega_cap),
            printed::sine_gordon_first(a),
            1e-12,
        );
        g.close(
            format!("sine-gordon N=2 A={a}"),
            sine_gordon_omega_lde(a, order(2)).map(|r| r.omega_cap),
            printed::sine_gordon_second(a),
            1e-12,
        );
    }
    for y in [-0.5, 0.3, 7.0] {
        g.close(
            format!("lim1 equals lde N=0 muA2={y}"),
            lim_duffing_omega(y, 1.0, 1).map(|r| r.omega_cap),
            duffing_omega_lde(y, 1.0, order(0))
                .map(|r| r.omega_cap)
                .unwrap_or(f64::NAN),
            1e-15,
        );
    }
    g
}

fn pairing() -> Group {
    let mut g = Group::new("pairing");
    for a in [0.5, 1.5, 2.5] {
        for (odd, even) in [(3, 2), (5, 4)] {
            let e = sine_gordon_omega_lde(a, order(even)).map(|r| r.omega_cap);
            match e {
                Ok(e) => g.close(
                    format!("sine-gordon N={odd} equals N={even} A={a}"),
                    sine_gordon_omega_lde(a, order(odd)).map(|r| r.omega_cap),
                    e,
                    1e-12,
                ),
                Err(err) => g.check(
                    format!("sine-gordon N={even} A={a}"),
                    false,
                    err.to_string(),
                ),
            }
        }
    }
    g
}

fn error_ordering(tol: f64) -> Group {
    let mut g = Group::new("error-ordering");
    let qcfg = QuadratureConfig::with_tol(tol);

    for y in [1.0, 10.0, 100.0, 1e4] {
        let p = Potential::Duffing { mu: y };
        let errs = omega_exact(&p, 1.0, &qcfg).and_then(|ex| {
            let ex = ex.omega_cap;
            let lde2 = (lde_omega(p, 1.0, 2)? - ex).abs();
            let lde3 = (lde_omega(p, 1.0, 3)? - ex).abs();
            let lim2 = (lim_duffing_omega(y, 1.0, 2)?.omega_cap - ex).abs();
            Ok((lde2, lde3, lim2))
        });
        let ok = matches!(errs, Ok((l2, l3, m2)) if l3 < l2 && l2 < m2);
        g.check(
            format!("duffing muA2={y}: lde3 < lde2 < lim2"),
            ok,
            format!("{errs:?}"),
        );
    }

    let spec = SweepSpec {
        potential: Potential::SineGordon,
        axis: Axis::Amplitude {
            min: 0.1,
            max: 3.1,
            points: 61,
        },
        methods: vec![Method::Lde(2), Method::Lim(2)],
        tol,
    };
    match run_sweep(&spec) {
        Ok(t) => {
            let worst = t
                .rows
                .iter()
                .filter(
                    |r| !matches!((&r.cells[0].delta, &r.cells[1].delta), (Ok(a), Ok(b)) if a < b),
                )
                .map(|r| r.x)
                .next();
            g.check(
                "sine-gordon lde2 error below lim2 on A in [0.1, 3.1]",
                worst.is_none(),
                format!("first violation at {worst:?}"),
            );
        }
        Err(e) => g.check("sine-gordon sweep", false, e.to_string()),
    }

    let p = Potential::PureQuartic { mu: 1.0 };
    let rel = |m: Method| -> nlkg_core::Result<f64> {
        let ex = omega_exact(&p, 1.0, &qcfg)?.omega_cap;
        let v = match m {
            Method::Lim(o) => lim_pure_quartic_omega(1.0, o)?.omega_cap,
            _ => dispersion(p, 1.0, m, tol)?,
        };
        Ok(((v - ex) / ex).abs())
    };
    let r = (|| {
        Ok::<_, nlkg_core::Error>((
            rel(Method::Lde(1))?,
            rel(Method::Lde(2))?,
            rel(Method::Lde(3))?,
            rel(Method::Lim(2))?,
        ))
    })();
    match r {
        Ok((l1, l2, l3, m2)) => {
            g.check("pure quartic lde3 <= 5e-5", l3 <= 5e-5, format!("{l3:.3e}"));
            g.check("pure quartic lde2 <= 2e-4", l2 <= 2e-4, format!("{l2:.3e}"));
            g.check(
                "pure quartic lde2 < lim2",
                l2 < m2,
                format!("{l2:.3e} vs {m2:.3e}"),
            );
            let decades = (l1.log10() - m2.log10()).abs();
            g.check(
                "pure quartic lde1 within a decade of lim2",
                decades <= 1.0,
                format!("{decades:.3} decades"),
            );
        }
        Err(e) => g.check("pure quartic errors", false, e.to_string()),
    }
    g
}

fn lde_convergence(tol: f64) -> Group {
    let mut g = Group::new("lde-convergence");
    let qcfg = QuadratureConfig::with_tol(tol);
    for y in [1.0, 10.0, 100.0] {
        let p = Potential::Duffing { mu: y };
        let Ok(ex) = omega_exact(&p, 1.0, &qcfg) else {
            g.check(
                format!("duffing exact muA2={y}"),
                false,
                "quadrature failed",
            );
            continue;
        };
        let errs: Vec<f64> = (0..=8)
            .map(|n| (lde_omega(p, 1.0, n).unwrap_or(f64::NAN) - ex.omega_cap).abs())
            .collect();
        let ok = errs.windows(2).all(|w| w[1] <= w[0]);
        g.check(
            format!("duffing error nonincreasing in N muA2={y}"),
            ok,
            format!("{:.2e} -> {:.2e}", errs[0], errs[8]),
        );
    }
    g
}

/// Runs every group. `tol` is the quadrature tolerance used by the exact
/// oracle.
pub fn run_all(tol: f64) -> Vec<Group> {
    vec![
        linear_limit(tol),
        oracle_agreement(tol),
        elliptic_identities(),
        closed_form_regressions(),
        pairing(),
        error_ordering(tol),
        lde_convergence(tol),
    ]
}
