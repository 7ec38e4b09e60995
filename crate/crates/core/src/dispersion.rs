//! Routes a [`DispersionQuery`] to the formula family it names.

use crate::baselines;
use crate::lde;
use crate::math;
use crate::model::{DispersionQuery, DispersionResult, LdeOrder, Method, Potential};
use crate::oracle::{self, QuadratureConfig};
use crate::Result;

impl DispersionQuery {
    /// Computes Ω. `Exact` uses quadrature of the period integral.
    pub fn evaluate(&self) -> Result<DispersionResult> {
        self.potential.check_amplitude(self.amplitude)?;
        let a = self.amplitude;
        match self.method {
            Method::Exact => {
                oracle::omega_exact(&self.potential, a, &QuadratureConfig::with_tol(self.tol))
            }
            Method::Lde(n) => {
                let order = LdeOrder::new(n)?;
                match self.potential {
                    Potential::Duffing { mu } => lde::duffing_omega_lde(mu, a, order),
                    Potential::SineGordon => lde::sine_gordon_omega_lde(a, order),
                    Potential::PureQuartic { mu } => lde::pure_quartic_omega_lde(mu, a, order),
                }
            }
            Method::Lim(order) => match self.potential {
                Potential::Duffing { mu } => baselines::lim_duffing_omega(mu, a, order),
                Potential::SineGordon => baselines::lim_sine_gordon_omega(a, order),
                Potential::PureQuartic { mu } => {
                    baselines::lim_pure_quartic_omega(math::sqrt(mu) * a, order)
                }
            },
        }
    }
}

/// Shorthand for `DispersionQuery::new(..)?.evaluate()`.
pub fn dispersion(potential: Potential, amplitude: f64, method: Method, tol: f64) -> Result<f64> {
    Ok(DispersionQuery::new(potential, amplitude, method, tol)?
        .evaluate()?
        .omega_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    #[allow(clippy::approx_constant)]
    fn dispatch_covers_every_family() {
        let pq = Potential::PureQuartic { mu: 4.0 };
        let unit = Potential::PureQuartic { mu: 1.0 };
        for m in [
            Method::Exact,
            Method::Lde(2),
            Method::Lim(1),
            Method::Lim(2),
        ] {
            // μ = 4 at A equals μ = 1 at 2A
            let a = dispersion(pq, 0.5, m, 1e-12).unwrap();
            let b = dispersion(unit, 1.0, m, 1e-12).unwrap();
            assert!((a - b).abs() < 1e-12, "{m}");
        }
        assert!(
            (dispersion(Potential::Duffing { mu: 0.0 }, 1.0, Method::Lde(0), 1e-12).unwrap() - 1.0)
                .abs()
                < 1e-15
        );
        let sg = dispersion(Potential::SineGordon, 1.5707963, Method::Exact, 1e-12).unwrap();
        assert!((sg - 0.847213).abs() < 1e-6);
    }

    #[test]
    fn dispatch_reports_errors() {
        assert!(matches!(
            dispersion(Potential::SineGordon, 3.5, Method::Lde(1), 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            dispersion(Potential::SineGordon, 1.0, Method::Lde(40), 1e-12),
            Err(Error::Order { .. })
        ));
    }
}
