use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use oscnet::observables::{
    coherence_factor_isolated, coherence_factor_joint, coherence_factor_reduced, decoherence_report,
    find_state_probability, linear_entropies, recurrence_probability, reduced_offdiagonal_ratio, swap_probability,
    uniform_grid, CorrelationTime, Target,
};
use oscnet::{
    evolve_with, propagator, reduce_to_mode, resolve, DampingRates, DerivedCoefficients, InitialSuperposition, Mode,
    Regime, SpectralModel, C64,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::scenario::{Observable, Scenario};
use crate::validate::{validate, ValidateOptions, ValidationReport};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub oracle: bool,
    pub trunc: Option<usize>,
    pub dt: Option<f64>,
}

#[derive(Debug)]
pub struct RunSummary {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub validation: Option<ValidationReport>,
}

pub struct Series {
    pub observable: Observable,
    pub values: Vec<f64>,
}

/// Closed-form values of every requested observable on the scenario grid.
pub fn sweep(s: &Scenario) -> Result<(Vec<f64>, Vec<Series>)> {
    let (rates, d) = resolve(&s.config)?;
    let init = s.initial.build()?;
    let times = uniform_grid(s.grid.t_max_lambda / s.config.lambda, s.grid.samples);
    let rows: Vec<Vec<f64>> = times
        .par_iter()
        .map(|&t| evaluate(s, &rates, &d, &init, t))
        .collect::<oscnet::Result<_>>()?;
    let series = s
        .observables
        .iter()
        .enumerate()
        .map(|(k, &o)| Series { observable: o, values: rows.iter().map(|r| r[k]).collect() })
        .collect();
    Ok((times, series))
}

fn evaluate(
    s: &Scenario,
    rates: &DampingRates,
    d: &DerivedCoefficients,
    init: &InitialSuperposition,
    t: f64,
) -> oscnet::Result<Vec<f64>> {
    let p = propagator(d, t)?;
    let snap = evolve_with(init, d, &p);
    let alpha = s.initial.alpha;
    let reduced = |m: Mode| reduce_to_mode(init, d, &snap, m);
    let mut entropies = None;
    let mut entropy = |f: fn(&oscnet::observables::Entropies) -> f64| {
        f(entropies.get_or_insert_with(|| linear_entropies(&snap)))
    };
    let cat = Target::Cat { alpha, sign: s.initial.sign };
    s.observables
        .iter()
        .map(|o| {
            Ok(match o {
                Observable::Recurrence => recurrence_probability(init, &snap),
                Observable::Swap => swap_probability(init, &snap),
                Observable::CoherenceJoint => coherence_factor_joint(s.initial.kind, rates, alpha, t),
                Observable::CoherenceMode1 => coherence_factor_reduced(Mode::One, rates, s.config.lambda, alpha, t),
                Observable::CoherenceMode2 => coherence_factor_reduced(Mode::Two, rates, s.config.lambda, alpha, t),
                Observable::CoherenceIsolated1 => coherence_factor_isolated(s.config.gamma_scale[0], alpha, t),
                Observable::CoherenceIsolated2 => coherence_factor_isolated(s.config.gamma_scale[1], alpha, t),
                Observable::OffdiagMode1 => reduced_offdiagonal_ratio(init, &reduced(Mode::One)?),
                Observable::OffdiagMode2 => reduced_offdiagonal_ratio(init, &reduced(Mode::Two)?),
                Observable::FindCatMode1 => find_state_probability(&reduced(Mode::One)?, cat),
                Observable::FindCatMode2 => find_state_probability(&reduced(Mode::Two)?, cat),
                Observable::FindCoherentMode1 => {
                    find_state_probability(&reduced(Mode::One)?, Target::Coherent(s.initial.eta))
                }
                Observable::FindCoherentMode2 => {
                    find_state_probability(&reduced(Mode::Two)?, Target::Coherent(s.initial.eta))
                }
                Observable::EntropyJoint => entropy(|e| e.s12),
                Observable::EntropyMode1 => entropy(|e| e.s1),
                Observable::EntropyMode2 => entropy(|e| e.s2),
                Observable::ExcessEntropy => entropy(|e| e.excess),
            })
        })
        .collect()
}

/// `t,lambda_t,value` with 17 significant digits and `\n` line endings.
pub fn csv(times: &[f64], omega10: f64, lambda: f64, values: &[f64]) -> String {
    let mut out = String::from("t,lambda_t,value\n");
    for (t, v) in times.iter().zip(values) {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", t * omega10, lambda * t, v).unwrap();
    }
    out
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn spectral(m: &SpectralModel) -> Value {
    match *m {
        SpectralModel::MarkovianWhite => json!({ "model": "markovian" }),
        SpectralModel::Lorentzian { eps_plus, eps_minus } => {
            json!({ "model": "lorentzian", "eps_plus": eps_plus, "eps_minus": eps_minus })
        }
        SpectralModel::WideLorentzian { eps_minus } => json!({ "model": "wide_lorentzian", "eps_minus": eps_minus }),
    }
}

pub fn manifest(s: &Scenario, files: &[PathBuf], seconds: f64, validation: Option<&ValidationReport>) -> Result<Value> {
    let c = &s.config;
    let (rates, d) = resolve(c)?;
    let report = match decoherence_report(&rates, s.initial.alpha.norm(), c.gamma_scale[0]) {
        Ok(r) => {
            let (tau_c, unbounded) = match r.tau_c {
                CorrelationTime::Finite(v) => (Some(v), false),
                CorrelationTime::Unbounded => (None, true),
            };
            json!({
                "tau_d": r.tau_d,
                "tau_d_isolated": r.tau_d_reference,
                "tau_d_ratio": r.ratio,
                "tau_c": tau_c,
                "tau_c_unbounded": unbounded,
                "tau_c_over_tau_d": r.tau_ratio,
                "tau_eigen_minus": r.tau_eigen_minus,
                "tau_eigen_plus": r.tau_eigen_plus,
            })
        }
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let kind = match s.initial.kind {
        oscnet::observables::StateKind::ProductCat => "cat_coherent",
        oscnet::observables::StateKind::EigenMinus => "eigen_minus",
        oscnet::observables::StateKind::EigenPlus => "eigen_plus",
    };
    Ok(json!({
        "scenario": s.name,
        "figure": s.figure,
        "notes": s.notes,
        "software": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
        "units": "frequencies and rates in units of omega10; t column is omega10 * t",
        "parameters": {
            "omega10": c.omega10,
            "omega20": c.omega20,
            "lambda": c.lambda,
            "F": c.drive_amplitude,
            "omega_drive": c.drive_frequency,
            "gamma1": c.gamma_scale[0],
            "gamma2": c.gamma_scale[1],
            "spectral1": spectral(&c.spectral[0]),
            "spectral2": spectral(&c.spectral[1]),
            "regime": match c.regime { Regime::Weak => "weak", Regime::Strong => "strong" },
            "allow_fictitious_ratio": c.allow_fictitious_ratio,
            "gamma_at_drive1": c.gamma_at_drive[0],
            "gamma_at_drive2": c.gamma_at_drive[1],
            "dressed_frequencies": c.dressed_frequencies(),
        },
        "initial": {
            "kind": kind,
            "alpha": complex(s.initial.alpha),
            "eta": complex(s.initial.eta),
            "sign": s.initial.sign.value(),
        },
        "grid": { "t_max_lambda": s.grid.t_max_lambda, "samples": s.grid.samples },
        "rates": {
            "gamma_plus": rates.gamma_plus,
            "gamma_minus": rates.gamma_minus,
            "gamma_at_drive": rates.gamma_at_drive,
        },
        "coefficients": {
            "Omega": d.big_omega,
            "omega_plus": d.omega_plus,
            "omega_minus": d.omega_minus,
            "Lambda": complex(d.big_lambda),
            "Delta": d.delta,
            "Phi": d.phi,
            "Theta": d.theta,
            "E_plus": d.e_plus.map(complex),
            "E_minus": d.e_minus.map(complex),
            "B": d.b.map(complex),
            "G": d.g.map(complex),
            "Pi": d.pi,
            "drive_correction": d.drive_correction,
        },
        "decoherence": report,
        "files": files.iter().filter_map(|f| f.file_name()).map(|f| f.to_string_lossy().into_owned()).collect::<Vec<_>>(),
        "validation": validation.map(|v| v.to_json()),
        "timing": { "wall_seconds": seconds },
    }))
}

/// Writes one CSV per observable and `manifest.json` under `out_dir/<name>/`.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<RunSummary> {
    let start = Instant::now();
    s.check()?;
    let dir = opts.out_dir.join(&s.name);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let (times, series) = sweep(s)?;
    let mut files = Vec::new();
    for sr in &series {
        let path = dir.join(format!("{}.csv", sr.observable));
        write(&path, &csv(&times, s.config.omega10, s.config.lambda, &sr.values))?;
        files.push(path);
    }
    let validation = if opts.oracle || s.oracle.enabled {
        let v = validate(s, &ValidateOptions { trunc: opts.trunc, dt: opts.dt, ..Default::default() })?;
        let path = dir.join("oracle_trace_distance.csv");
        let t: Vec<f64> = v.samples.iter().map(|x| x.t).collect();
        let td: Vec<f64> = v.samples.iter().map(|x| x.trace_distance).collect();
        write(&path, &csv(&t, s.config.omega10, s.config.lambda, &td))?;
        files.push(path);
        Some(v)
    } else {
        None
    };
    let m = manifest(s, &files, start.elapsed().as_secs_f64(), validation.as_ref())?;
    let path = dir.join("manifest.json");
    write(&path, &(serde_json::to_string_pretty(&m)? + "\n"))?;
    files.push(path);
    log::info!("{}: wrote {} files to {}", s.name, files.len(), dir.display());
    Ok(RunSummary { dir, files, validation })
}
