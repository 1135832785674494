//! Built-in scenarios, one per figure panel. Units of omega10.

use std::f64::consts::PI;

use oscnet::{Regime, SpectralModel, SystemConfig};

use crate::error::{CliError, Result};
use crate::scenario::{GridSpec, InitialSpec, Observable, OracleSpec, Scenario};

pub const NAMES: [&str; 12] =
    ["fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f", "fig5", "fig6", "fig7a", "fig7b", "fig8a", "fig8b"];

fn scenario(
    name: &str,
    figure: &str,
    config: SystemConfig,
    observables: &[Observable],
    t_max_lambda: f64,
    samples: usize,
) -> Scenario {
    Scenario {
        name: name.into(),
        figure: figure.into(),
        notes: Vec::new(),
        config,
        initial: InitialSpec::product(1.0, 1.0),
        observables: observables.to_vec(),
        grid: GridSpec { t_max_lambda, samples },
        oracle: OracleSpec::default(),
    }
}

fn markovian(lambda: f64, gamma: f64) -> SystemConfig {
    SystemConfig::identical(1.0, lambda, gamma, SpectralModel::MarkovianWhite)
}

fn weak(lambda: f64, gamma: f64) -> SystemConfig {
    SystemConfig { regime: Regime::Weak, ..markovian(lambda, gamma) }
}

fn fictitious(mut c: SystemConfig) -> SystemConfig {
    c.allow_fictitious_ratio = true;
    c
}

pub fn builtin(name: &str) -> Result<Scenario> {
    use Observable::*;
    let swap = [Recurrence, Swap];
    let entropy = [EntropyJoint, EntropyMode1, EntropyMode2, ExcessEntropy];
    let s = match name {
        "fig4a" => scenario(name, "Fig. 4(a)", weak(0.02, 0.0), &swap, 4.0 * PI, 4001),
        "fig4b" => scenario(name, "Fig. 4(b)", markovian(1.0, 0.0), &swap, 16.0 * PI, 8001),
        "fig4c" => scenario(name, "Fig. 4(c)", markovian(2.0, 0.0), &swap, 4.0 * PI, 2001),
        "fig4d" => scenario(name, "Fig. 4(d)", weak(0.02, 2e-3), &swap, 16.0 * PI, 8001),
        "fig4e" => scenario(name, "Fig. 4(e)", markovian(2.0, 2e-3), &swap, 1000.0, 20001),
        "fig4f" => {
            let mut c = weak(0.02, 0.0);
            c.omega20 = 0.5;
            c.drive_amplitude = c.required_drive();
            c.drive_frequency = 0.01;
            let mut s = scenario(name, "Fig. 4(f)", c, &swap, 4.0 * PI, 20001);
            s.notes = vec![
                format!("F = {} from the equal-frequency constraint with omega20 = 0.5", s.config.drive_amplitude),
                "drive frequency 0.01 instead of resonance with oscillator 2".into(),
            ];
            s
        }
        "fig5" => scenario(
            name,
            "Fig. 5",
            fictitious(markovian(2.0, 0.4)),
            &[CoherenceJoint, CoherenceMode1, CoherenceMode2, CoherenceIsolated1],
            30.0,
            3001,
        ),
        "fig6" => {
            let mut c = fictitious(weak(0.02, 4e-3));
            c.gamma_scale[1] = 4e-5;
            scenario(
                name,
                "Fig. 6",
                c,
                &[CoherenceJoint, CoherenceMode1, CoherenceMode2, CoherenceIsolated1, CoherenceIsolated2],
                25.0,
                2501,
            )
        }
        "fig7a" => scenario(name, "Fig. 7(a)", markovian(2.0, 0.1), &[FindCatMode1, FindCoherentMode1], 100.0, 10001),
        "fig7b" => scenario(name, "Fig. 7(b)", markovian(2.0, 0.1), &[FindCatMode2, FindCoherentMode2], 100.0, 10001),
        "fig8a" => scenario(name, "Fig. 8(a)", markovian(2.0, 0.1), &entropy, 16.0, 1601),
        "fig8b" => scenario(name, "Fig. 8(b)", fictitious(markovian(2.0, 1.0)), &entropy, 40.0, 4001),
        _ => return Err(CliError::UnknownBuiltin(name.into())),
    };
    Ok(s)
}

pub fn describe(name: &str) -> &'static str {
    match name {
        "fig4a" => "P_R, P_S without loss, weak coupling lambda = 0.02",
        "fig4b" => "P_R, P_S without loss, intermediate coupling lambda = 1",
        "fig4c" => "P_R, P_S without loss, strong coupling lambda = 2",
        "fig4d" => "P_R, P_S, weak coupling lambda = 0.02, Gamma = 2e-3",
        "fig4e" => "P_R, P_S, Markovian strong coupling lambda = 2, Gamma = 2e-3",
        "fig4f" => "P_R, P_S with drive F/omega20 = 1, drive frequency 0.01",
        "fig5" => "coherence factors, Markovian, lambda/Gamma = 5",
        "fig6" => "coherence factors, Gamma1/Gamma2 = 100, lambda/Gamma1 = 5",
        "fig7a" => "probability of the cat and the coherent state in mode 1",
        "fig7b" => "probability of the cat and the coherent state in mode 2",
        "fig8a" => "linear entropies, lambda/Gamma = 20",
        "fig8b" => "linear entropies, lambda/Gamma = 2",
        _ => "",
    }
}
