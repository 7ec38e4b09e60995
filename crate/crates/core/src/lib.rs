//! Amplitude-dependent dispersion relations Ω(A) for periodic traveling waves
//! of the nonlinear Klein-Gordon equation `u_tt − u_xx + V'(u) = 0`.
//!
//! A traveling wave `u(kx − ωt)` reduces to the oscillator `Ω² ü + V'(u) = 0`
//! with `Ω² = ω² − k²`. This crate computes Ω for three potentials:
//!
//! * Duffing, `V(u) = u²/2 + μu⁴/4`
//! * Sine-Gordon, `V(u) = −cos u`
//! * pure quartic, `V(u) = μu⁴/4`
//!
//! by several routes: exact oracles (quadrature, ODE period, elliptic
//! closed forms), the linear delta expansion series to arbitrary order, and
//! first and second order harmonic-balance baselines.
//!
//! The crate is `no_std` and needs only `alloc` (for sweep tables).

#![no_std]
// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod baselines;
pub mod dispersion;
pub mod elliptic;
mod error;
pub mod lde;
pub(crate) mod math;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use model::{
    omega_from_wavenumber, DispersionQuery, DispersionResult, LdeOrder, Method, Potential,
    WaveContext, MAX_LDE_ORDER,
};
