//! Coherence dynamics of two coupled dissipative oscillators at zero
//! temperature.
//!
//! [`closed_form`] evaluates the analytic solution of the strong-coupling
//! master equation for two-term coherent superpositions. [`fock`] integrates
//! the same master equation in a truncated Fock basis and is used to check
//! the analytic results.

pub mod closed_form;
pub mod coherent;
pub mod error;
pub mod fock;
pub mod observables;
pub mod params;

pub use num_complex::Complex64 as C64;

pub use closed_form::{
    characteristic_trajectories, evolve_joint_state, evolve_labels, evolve_with, propagator,
    reduce_to_mode, InitialSuperposition, JointStateSnapshot, Mode, PropagatorSample,
    ReducedStateSnapshot, Sign,
};
pub use error::{Error, Result};
pub use params::{
    derive_coefficients, evaluate_rates, normal_mode_frequencies, resolve, DampingRates,
    DerivedCoefficients, Regime, SpectralModel, SystemConfig,
};
