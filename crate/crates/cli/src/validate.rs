use std::fmt;

use oscnet::fock::{build_liouvillian, coherent_superposition_to_fock, compare, integrate_with, minimum_truncation, IntegrateOptions};
use oscnet::observables::uniform_grid;
use oscnet::{evolve_joint_state, resolve, C64};
use serde_json::{json, Value};

use crate::error::Result;
use crate::scenario::Scenario;

pub const TRACE_DISTANCE_LIMIT: f64 = 1e-3;
pub const COHERENCE_LIMIT: f64 = 1e-3;

/// Closed-form coherences below this are too small for a relative check.
const COHERENCE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    pub trunc: Option<usize>,
    pub dt: Option<f64>,
    /// Replaces both amplitudes of the initial state.
    pub alpha: Option<f64>,
    /// Replaces the mode-2 amplitude only; applied after `alpha`.
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationSample {
    pub t: f64,
    pub trace_distance: f64,
    pub fidelity: f64,
    /// |oracle coherence / closed-form coherence - 1|, when the latter is resolvable.
    pub coherence_deviation: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub scenario: String,
    pub figure: String,
    pub trunc: usize,
    pub dt: f64,
    /// Undriven runs are compared in the frame co-rotating with oscillator 1.
    pub co_rotating: bool,
    pub samples: Vec<ValidationSample>,
    pub max_trace_distance: f64,
    pub max_coherence_deviation: f64,
    pub min_fidelity: f64,
    pub pass: bool,
}

impl ValidationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario,
            "figure": self.figure,
            "truncation": self.trunc,
            "dt": self.dt,
            "co_rotating_frame": self.co_rotating,
            "max_trace_distance": self.max_trace_distance,
            "max_coherence_deviation": self.max_coherence_deviation,
            "min_fidelity": self.min_fidelity,
            "trace_distance_limit": TRACE_DISTANCE_LIMIT,
            "coherence_limit": COHERENCE_LIMIT,
            "pass": self.pass,
            "samples": self.samples.iter().map(|s| json!({
                "t": s.t,
                "trace_distance": s.trace_distance,
                "fidelity": s.fidelity,
                "coherence_deviation": s.coherence_deviation,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}), N = {}, dt = {:e}", self.scenario, self.figure, self.trunc, self.dt)?;
        writeln!(f, "{:>14} {:>14} {:>14} {:>14}", "t", "trace dist", "fidelity", "coh. dev")?;
        for s in &self.samples {
            let dev = s.coherence_deviation.map(|d| format!("{d:14.3e}")).unwrap_or_else(|| format!("{:>14}", "-"));
            writeln!(f, "{:14.6} {:14.3e} {:14.10} {dev}", s.t, s.trace_distance, s.fidelity)?;
        }
        writeln!(
            f,
            "max trace distance {:.3e} (limit {TRACE_DISTANCE_LIMIT:e}), max coherence deviation {:.3e} (limit {COHERENCE_LIMIT:e})",
            self.max_trace_distance, self.max_coherence_deviation
        )?;
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Compares the closed form against a Fock-space integration on the
/// scenario's oracle grid.
pub fn validate(s: &Scenario, opts: &ValidateOptions) -> Result<ValidationReport> {
    let mut s = s.clone();
    if let Some(a) = opts.alpha {
        s.initial.alpha = C64::new(a, 0.0);
        s.initial.eta = C64::new(a, 0.0);
    }
    if let Some(e) = opts.eta {
        s.initial.eta = C64::new(e, 0.0);
    }
    s.check()?;

    // without a drive the frame is free; co-rotating keeps the step size set by lambda
    let co_rotating = s.config.drive_amplitude == 0.0;
    if co_rotating {
        s.config.drive_frequency = s.config.dressed_frequencies()[0];
    }
    let (rates, d) = resolve(&s.config)?;
    let init = s.initial.build()?;
    let times = uniform_grid(s.oracle.t_max_lambda / s.config.lambda, s.oracle.samples);

    let mut amp = init.max_amplitude();
    for &t in &times {
        let snap = evolve_joint_state(&init, &d, t)?;
        for u in snap.labels {
            amp = amp.max(u.0.norm()).max(u.1.norm());
        }
    }
    let n = opts.trunc.or(s.oracle.trunc).unwrap_or_else(|| minimum_truncation(amp));
    let dims = (n, n);
    let rho0 = coherent_superposition_to_fock(&init, dims)?;
    let l = build_liouvillian(&s.config, &rates, &d, s.config.regime, dims)?;
    let mut iopts = IntegrateOptions::for_coefficients(&d);
    iopts.dt = opts.dt.or(s.oracle.dt);
    let dt = iopts.dt.unwrap_or(iopts.default_dt());
    log::info!("{}: oracle N = {n}, dt = {dt:e}, {} samples", s.name, times.len());

    let mut samples = Vec::with_capacity(times.len());
    integrate_with(&l, &rho0, &times, iopts, |t, rho| {
        let snap = evolve_joint_state(&init, &d, t)?;
        let cmp = compare(rho, &snap)?;
        let resolvable = snap.coeffs[0][1].norm() > COHERENCE_FLOOR;
        samples.push(ValidationSample {
            t,
            trace_distance: cmp.trace_distance,
            fidelity: cmp.fidelity,
            coherence_deviation: resolvable.then(|| (cmp.offdiag_ratio - 1.0).abs()),
        });
        Ok(())
    })?;

    let max_trace_distance = samples.iter().map(|x| x.trace_distance).fold(0.0, f64::max);
    let max_coherence_deviation = samples.iter().filter_map(|x| x.coherence_deviation).fold(0.0, f64::max);
    let min_fidelity = samples.iter().map(|x| x.fidelity).fold(f64::INFINITY, f64::min);
    Ok(ValidationReport {
        scenario: s.name.clone(),
        figure: s.figure.clone(),
        trunc: n,
        dt,
        co_rotating,
        pass: max_trace_distance <= TRACE_DISTANCE_LIMIT && max_coherence_deviation <= COHERENCE_LIMIT,
        samples,
        max_trace_distance,
        max_coherence_deviation,
        min_fidelity,
    })
}
