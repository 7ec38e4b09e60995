//! Error metrics, parameter sweeps and the datasets behind the comparison
//! figures.
//!
//! A sweep evaluates the exact Ω plus a list of approximate methods at every
//! point of a grid. Failures of a single method at a single point are kept
//! in the table as error cells; they never abort the sweep.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::dispersion::dispersion;
use crate::math;
use crate::model::{Method, Potential};
use crate::oracle;
use crate::{Error, Result};

/// `log10 |Ω − Ω_exact| / |Ω_exact|`; `−∞` when the two agree exactly.
pub fn relative_error_log10(omega: f64, omega_exact: f64) -> Result<f64> {
    if omega_exact == 0.0 || omega_exact.is_nan() {
        return Err(Error::Domain("exact Omega must be nonzero"));
    }
    let rel = (omega - omega_exact).abs() / omega_exact.abs();
    if rel == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(math::log10(rel))
}

/// Abscissa of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// Grid in the amplitude A; the potential's μ is kept.
    Amplitude { min: f64, max: f64, points: usize },
    /// Grid in μA² for the Duffing potential, evaluated at A = 1, μ = x.
    MuA2 {
        min: f64,
        max: f64,
        points: usize,
        log_scale: bool,
    },
}

impl Axis {
    pub fn label(&self) -> &'static str {
        match self {
            Axis::Amplitude { .. } => "A",
            Axis::MuA2 { .. } => "muA2",
        }
    }

    pub fn is_log(&self) -> bool {
        matches!(
            self,
            Axis::MuA2 {
                log_scale: true,
                ..
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub potential: Potential,
    pub axis: Axis,
    pub methods: Vec<Method>,
    /// Quadrature tolerance for the exact column.
    pub tol: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSpec("tolerance must be > 0"));
        }
        for m in &self.methods {
            m.validate()?;
        }
        let (min, max, points) = match self.axis {
            Axis::Amplitude { min, max, points } => (min, max, points),
            Axis::MuA2 {
                min, max, points, ..
            } => (min, max, points),
        };
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::InvalidSpec("grid bounds must be finite"));
        }
        if min > max {
            return Err(Error::InvalidSpec("grid requires min <= max"));
        }
        if min < max && points < 2 {
            return Err(Error::InvalidSpec("grid requires at least 2 points"));
        }
        if points == 0 {
            return Err(Error::InvalidSpec("grid requires at least 1 point"));
        }
        match self.axis {
            Axis::Amplitude { .. } => {
                self.potential.check_amplitude(min)?;
                self.potential.check_amplitude(max)?;
            }
            Axis::MuA2 { log_scale, .. } => {
                if !matches!(self.potential, Potential::Duffing { .. }) {
                    return Err(Error::InvalidSpec("muA2 axis applies to Duffing only"));
                }
                if !(min > -1.0) {
                    return Err(Error::Domain("Duffing requires mu*A^2 > -1"));
                }
                if log_scale && !(min > 0.0) {
                    return Err(Error::InvalidSpec("log-scaled grid requires min > 0"));
                }
            }
        }
        Ok(())
    }

    /// Grid abscissae in ascending order. A degenerate range gives one point.
    pub fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let (min, max, points, log) = match self.axis {
            Axis::Amplitude { min, max, points } => (min, max, points, false),
            Axis::MuA2 {
                min,
                max,
                points,
                log_scale,
            } => (min, max, points, log_scale),
        };
        if min == max {
            return Ok(alloc::vec![min]);
        }
        let last = points - 1;
        let xs = (0..points)
            .map(|i| {
                if i == 0 {
                    return min;
                }
                if i == last {
                    return max;
                }
                let f = i as f64 / last as f64;
                if log {
                    let (lo, hi) = (math::log10(min), math::log10(max));
                    math::pow10(lo + f * (hi - lo))
                } else {
                    min + f * (max - min)
                }
            })
            .collect();
        Ok(xs)
    }

    /// Potential and amplitude at abscissa `x`.
    fn point(&self, x: f64) -> (Potential, f64) {
        match self.axis {
            Axis::Amplitude { .. } => (self.potential, x),
            Axis::MuA2 { .. } => (Potential::Duffing { mu: x }, 1.0),
        }
    }
}

pub type Cell = core::result::Result<f64, Error>;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodCells {
    pub omega: Cell,
    pub ratio: Cell,
    pub delta: Cell,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub exact: Cell,
    /// One entry per method, in the order of `SweepSpec::methods`.
    pub cells: Vec<MethodCells>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub abscissa: &'static str,
    pub log_x: bool,
    pub methods: Vec<Method>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn column(&self, method: Method) -> Option<usize> {
        self.methods.iter().position(|m| *m == method)
    }
}

/// Cheapest exact oracle for the point: elliptic for Sine-Gordon,
/// quadrature otherwise.
fn exact_at(p: &Potential, a: f64, tol: f64) -> Cell {
    match p {
        Potential::SineGordon => oracle::omega_exact_sine_gordon(a).map(|r| r.omega_cap),
        _ => {
            oracle::omega_exact(p, a, &oracle::QuadratureConfig::with_tol(tol)).map(|r| r.omega_cap)
        }
    }
}

/// Evaluates one grid point. Independent of every other point, so callers
/// may evaluate rows concurrently and collect them in grid order.
pub fn evaluate_row(spec: &SweepSpec, x: f64) -> SweepRow {
    let (p, a) = spec.point(x);
    let exact = exact_at(&p, a, spec.tol);
    let cells = spec
        .methods
        .iter()
        .map(|&m| {
            let omega = if m == Method::Exact {
                exact
            } else {
                dispersion(p, a, m, spec.tol)
            };
            let (ratio, delta) = match (&omega, &exact) {
                (Ok(om), Ok(ex)) => (Ok(om / ex), relative_error_log10(*om, *ex)),
                (Err(e), _) | (_, Err(e)) => (Err(*e), Err(*e)),
            };
            MethodCells {
                omega,
                ratio,
                delta,
            }
        })
        .collect();
    SweepRow { x, exact, cells }
}

/// Builds a table from rows evaluated elsewhere (e.g. in parallel).
pub fn assemble(spec: &SweepSpec, rows: Vec<SweepRow>) -> SweepTable {
    SweepTable {
        abscissa: spec.axis.label(),
        log_x: spec.axis.is_log(),
        methods: spec.methods.clone(),
        rows,
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    let rows = spec
        .grid()?
        .into_iter()
        .map(|x| evaluate_row(spec, x))
        .collect();
    Ok(assemble(spec, rows))
}

pub const DEFAULT_GRID_POINTS: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Grid and method choices for the two panels (ratio, relative error) of
/// figure `id` ∈ {1, 2, 3}.
///
/// 1. Duffing: ratio over μA² ∈ [−0.99, 0], error over μA² ∈ [1, 10⁴]
///    log-spaced; methods lde0, lde2, lde3, lim2.
/// 2. Sine-Gordon over A = kπ/(n+1), k = 1..n; lde1, lde2, lim1, lim2.
/// 3. Pure quartic (μ = 1) over A ∈ [0.1, 5]; lde1, lde2, lde3, lim1, lim2.
pub fn figure_specs(id: u8, points: usize, tol: f64) -> Result<(SweepSpec, SweepSpec)> {
    use Method::{Lde, Lim};
    match id {
        1 => {
            let methods = alloc::vec![Lde(0), Lde(2), Lde(3), Lim(2)];
            let potential = Potential::Duffing { mu: 1.0 };
            let left = SweepSpec {
                potential,
                axis: Axis::MuA2 {
                    min: -0.99,
                    max: 0.0,
                    points,
                    log_scale: false,
                },
                methods: methods.clone(),
                tol,
            };
            let right = SweepSpec {
                potential,
                axis: Axis::MuA2 {
                    min: 1.0,
                    max: 1e4,
                    points,
                    log_scale: true,
                },
                methods,
                tol,
            };
            Ok((left, right))
        }
        2 => {
            let step = PI / (points as f64 + 1.0);
            let spec = SweepSpec {
                potential: Potential::SineGordon,
                axis: Axis::Amplitude {
                    min: step,
                    max: points as f64 * step,
                    points,
                },
                methods: alloc::vec![Lde(1), Lde(2), Lim(1), Lim(2)],
                tol,
            };
            Ok((spec.clone(), spec))
        }
        3 => {
            let spec = SweepSpec {
                potential: Potential::PureQuartic { mu: 1.0 },
                axis: Axis::Amplitude {
                    min: 0.1,
                    max: 5.0,
                    points,
                },
                methods: alloc::vec![Lde(1), Lde(2), Lde(3), Lim(1), Lim(2)],
                tol,
            };
            Ok((spec.clone(), spec))
        }
        _ => Err(Error::InvalidSpec("figure id must be 1, 2 or 3")),
    }
}

/// (ratio panel, relative-error panel) for figure `id`.
pub fn figure_dataset(id: u8, points: usize) -> Result<(SweepTable, SweepTable)> {
    let (left, right) = figure_specs(id, points, DEFAULT_TOL)?;
    Ok((run_sweep(&left)?, run_sweep(&right)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cell(row: &SweepRow, i: usize) -> &MethodCells {
        &row.cells[i]
    }

    #[test]
    fn relative_error_values() {
        assert_eq!(relative_error_log10(1.0, 1.0), Ok(f64::NEG_INFINITY));
        assert!((relative_error_log10(1.01, 1.0).unwrap() + 2.0).abs() < 1e-12);
        assert!((relative_error_log10(0.99, 1.0).unwrap() + 2.0).abs() < 1e-12);
        assert!(relative_error_log10(1.0, 0.0).is_err());
    }

    #[test]
    fn degenerate_grid_at_linear_limit() {
        let spec = SweepSpec {
            potential: Potential::Duffing { mu: 1.0 },
            axis: Axis::MuA2 {
                min: 0.0,
                max: 0.0,
                points: 2,
                log_scale: false,
            },
            methods: vec![Method::Lde(2)],
            tol: 1e-12,
        };
        let t = run_sweep(&spec).unwrap();
        assert_eq!(t.rows.len(), 1);
        let r = cell(&t.rows[0], 0).ratio.unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_shapes() {
        let mut spec = SweepSpec {
            potential: Potential::Duffing { mu: 1.0 },
            axis: Axis::MuA2 {
                min: 1.0,
                max: 1e4,
                points: 5,
                log_scale: true,
            },
            methods: vec![],
            tol: 1e-12,
        };
        let g = spec.grid().unwrap();
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], 1e4);
        assert!((g[2] - 100.0).abs() < 1e-12);
        spec.axis = Axis::MuA2 {
            min: 0.0,
            max: 1.0,
            points: 5,
            log_scale: true,
        };
        assert!(spec.grid().is_err());
        spec.axis = Axis::Amplitude {
            min: 2.0,
            max: 1.0,
            points: 5,
        };
        assert!(spec.grid().is_err());
        spec.potential = Potential::SineGordon;
        spec.axis = Axis::Amplitude {
            min: 0.1,
            max: 3.2,
            points: 5,
        };
        assert!(matches!(spec.grid(), Err(Error::Domain(_))));
    }

    #[test]
    fn pure_quartic_ratios_are_constant() {
        let (spec, _) = figure_specs(3, 12, 1e-12).unwrap();
        let t = run_sweep(&spec).unwrap();
        for i in 0..t.methods.len() {
            let first = cell(&t.rows[0], i).ratio.unwrap();
            for row in &t.rows {
                let r = cell(row, i).ratio.unwrap();
                assert!((r - first).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sine_gordon_lde2_beats_lim2_everywhere() {
        let spec = SweepSpec {
            potential: Potential::SineGordon,
            axis: Axis::Amplitude {
                min: 0.1,
                max: 3.1,
                points: 31,
            },
            methods: vec![Method::Lde(2), Method::Lim(2)],
            tol: 1e-12,
        };
        let t = run_sweep(&spec).unwrap();
        for row in &t.rows {
            let lde = cell(row, 0).delta.unwrap();
            let lim = cell(row, 1).delta.unwrap();
            assert!(lde < lim, "A={}", row.x);
        }
    }

    #[test]
    fn failing_cells_do_not_abort() {
        // Lim order 2 has a negative radicand near muA2 = -1
        let spec = SweepSpec {
            potential: Potential::Duffing { mu: 1.0 },
            axis: Axis::MuA2 {
                min: -0.99,
                max: -0.9,
                points: 4,
                log_scale: false,
            },
            methods: vec![Method::Lim(2), Method::Lde(2)],
            tol: 1e-12,
        };
        let t = run_sweep(&spec).unwrap();
        assert_eq!(t.rows.len(), 4);
        let first = &t.rows[0];
        assert_eq!(cell(first, 0).omega.unwrap_err().reason_code(), "domain");
        assert!(cell(first, 1).omega.is_ok());
        assert!(first.exact.is_ok());
    }

    #[test]
    fn exact_method_column_reuses_oracle() {
        let spec = SweepSpec {
            potential: Potential::SineGordon,
            axis: Axis::Amplitude {
                min: 1.0,
                max: 2.0,
                points: 2,
            },
            methods: vec![Method::Exact],
            tol: 1e-12,
        };
        let t = run_sweep(&spec).unwrap();
        for row in &t.rows {
            assert_eq!(cell(row, 0).ratio, Ok(1.0));
            assert_eq!(cell(row, 0).delta, Ok(f64::NEG_INFINITY));
        }
    }

    #[test]
    fn figure_ids() {
        assert!(figure_specs(0, 10, 1e-12).is_err());
        assert!(figure_specs(4, 10, 1e-12).is_err());
        for id in 1..=3 {
            let (l, r) = figure_specs(id, 10, 1e-12).unwrap();
            assert!(l.validate().is_ok() && r.validate().is_ok());
        }
    }
}
