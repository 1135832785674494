//! Curves for the browser demo. Every function returns a row-major table
//! whose first column is lambda*t; frequencies are in units of omega0 = 1.

use oscnet::observables::{
    coherence_factor_isolated, coherence_factor_joint, coherence_factor_reduced, linear_entropies,
    recurrence_probability, swap_probability, uniform_grid, StateKind,
};
use oscnet::{evolve_joint_state, resolve, InitialSuperposition, Mode, Regime, Sign, SpectralModel, SystemConfig, C64};
use wasm_bindgen::prelude::*;

pub const MAX_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: usize,
    pub data: Vec<f64>,
}

impl Table {
    pub fn rows(&self) -> usize {
        self.data.len() / self.columns
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.columns..(k + 1) * self.columns]
    }
}

fn config(lambda: f64, gamma: [f64; 2], weak: bool) -> SystemConfig {
    let mut c = SystemConfig::identical(1.0, lambda, gamma[0], SpectralModel::MarkovianWhite);
    c.gamma_scale[1] = gamma[1];
    c.regime = if weak { Regime::Weak } else { Regime::Strong };
    // the demo lets the sliders reach ratios outside the strong-coupling window
    c.allow_fictitious_ratio = true;
    c
}

fn grid(lambda: f64, t_max_lambda: f64, samples: usize) -> oscnet::Result<Vec<f64>> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(oscnet::Error::InvalidParameter {
            name: "samples",
            reason: format!("must lie in 2..={MAX_SAMPLES}, got {samples}"),
        });
    }
    if !(t_max_lambda.is_finite() && t_max_lambda > 0.0) {
        return Err(oscnet::Error::InvalidParameter {
            name: "t_max_lambda",
            reason: format!("must be > 0, got {t_max_lambda}"),
        });
    }
    Ok(uniform_grid(t_max_lambda / lambda, samples))
}

/// Columns: lambda*t, P_R, P_S for a cat state in mode 1 and a coherent
/// state in mode 2.
pub fn recurrence_swap_table(
    lambda: f64,
    gamma: f64,
    alpha: f64,
    weak: bool,
    t_max_lambda: f64,
    samples: usize,
) -> oscnet::Result<Table> {
    let c = config(lambda, [gamma; 2], weak);
    let (_, d) = resolve(&c)?;
    let init = InitialSuperposition::cat_coherent(C64::new(alpha, 0.0), C64::new(alpha, 0.0), Sign::Plus)?;
    let mut data = Vec::with_capacity(3 * samples);
    for t in grid(lambda, t_max_lambda, samples)? {
        let s = evolve_joint_state(&init, &d, t)?;
        data.extend([lambda * t, recurrence_probability(&init, &s), swap_probability(&init, &s)]);
    }
    Ok(Table { columns: 3, data })
}

/// Columns: lambda*t, joint, mode 1, mode 2, isolated oscillator 1.
pub fn coherence_table(
    lambda: f64,
    gamma1: f64,
    gamma2: f64,
    alpha: f64,
    t_max_lambda: f64,
    samples: usize,
) -> oscnet::Result<Table> {
    let c = config(lambda, [gamma1, gamma2], false);
    let (rates, _) = resolve(&c)?;
    let a = C64::new(alpha, 0.0);
    let mut data = Vec::with_capacity(5 * samples);
    for t in grid(lambda, t_max_lambda, samples)? {
        data.extend([
            lambda * t,
            coherence_factor_joint(StateKind::ProductCat, &rates, a, t),
            coherence_factor_reduced(Mode::One, &rates, lambda, a, t),
            coherence_factor_reduced(Mode::Two, &rates, lambda, a, t),
            coherence_factor_isolated(gamma1, a, t),
        ]);
    }
    Ok(Table { columns: 5, data })
}

/// Columns: lambda*t, S12, S1, S2, S1 + S2 - S12.
pub fn entropy_table(lambda: f64, gamma: f64, alpha: f64, t_max_lambda: f64, samples: usize) -> oscnet::Result<Table> {
    let c = config(lambda, [gamma; 2], false);
    let (_, d) = resolve(&c)?;
    let init = InitialSuperposition::cat_coherent(C64::new(alpha, 0.0), C64::new(alpha, 0.0), Sign::Plus)?;
    let mut data = Vec::with_capacity(5 * samples);
    for t in grid(lambda, t_max_lambda, samples)? {
        let e = linear_entropies(&evolve_joint_state(&init, &d, t)?);
        data.extend([lambda * t, e.s12, e.s1, e.s2, e.excess]);
    }
    Ok(Table { columns: 5, data })
}

fn js(r: oscnet::Result<Table>) -> Result<Vec<f64>, JsError> {
    r.map(|t| t.data).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = recurrenceSwap)]
pub fn recurrence_swap(
    lambda: f64,
    gamma: f64,
    alpha: f64,
    weak: bool,
    t_max_lambda: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    js(recurrence_swap_table(lambda, gamma, alpha, weak, t_max_lambda, samples))
}

#[wasm_bindgen]
pub fn coherence(
    lambda: f64,
    gamma1: f64,
    gamma2: f64,
    alpha: f64,
    t_max_lambda: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    js(coherence_table(lambda, gamma1, gamma2, alpha, t_max_lambda, samples))
}

#[wasm_bindgen]
pub fn entropies(lambda: f64, gamma: f64, alpha: f64, t_max_lambda: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    js(entropy_table(lambda, gamma, alpha, t_max_lambda, samples))
}
