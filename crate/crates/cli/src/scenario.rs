//! Scenario description and its TOML form.
//!
//! Frequencies and rates are in units of omega10; time windows are given as
//! lambda * t.

use std::fmt;
use std::str::FromStr;

use oscnet::observables::StateKind;
use oscnet::{InitialSuperposition, Regime, Sign, SpectralModel, SystemConfig, C64};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Recurrence,
    Swap,
    CoherenceJoint,
    CoherenceMode1,
    CoherenceMode2,
    CoherenceIsolated1,
    CoherenceIsolated2,
    OffdiagMode1,
    OffdiagMode2,
    FindCatMode1,
    FindCatMode2,
    FindCoherentMode1,
    FindCoherentMode2,
    EntropyJoint,
    EntropyMode1,
    EntropyMode2,
    ExcessEntropy,
}

impl Observable {
    pub const ALL: [Observable; 17] = [
        Observable::Recurrence,
        Observable::Swap,
        Observable::CoherenceJoint,
        Observable::CoherenceMode1,
        Observable::CoherenceMode2,
        Observable::CoherenceIsolated1,
        Observable::CoherenceIsolated2,
        Observable::OffdiagMode1,
        Observable::OffdiagMode2,
        Observable::FindCatMode1,
        Observable::FindCatMode2,
        Observable::FindCoherentMode1,
        Observable::FindCoherentMode2,
        Observable::EntropyJoint,
        Observable::EntropyMode1,
        Observable::EntropyMode2,
        Observable::ExcessEntropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::Recurrence => "recurrence",
            Observable::Swap => "swap",
            Observable::CoherenceJoint => "coherence_joint",
            Observable::CoherenceMode1 => "coherence_mode1",
            Observable::CoherenceMode2 => "coherence_mode2",
            Observable::CoherenceIsolated1 => "coherence_isolated1",
            Observable::CoherenceIsolated2 => "coherence_isolated2",
            Observable::OffdiagMode1 => "offdiag_mode1",
            Observable::OffdiagMode2 => "offdiag_mode2",
            Observable::FindCatMode1 => "find_cat_mode1",
            Observable::FindCatMode2 => "find_cat_mode2",
            Observable::FindCoherentMode1 => "find_coherent_mode1",
            Observable::FindCoherentMode2 => "find_coherent_mode2",
            Observable::EntropyJoint => "entropy_joint",
            Observable::EntropyMode1 => "entropy_mode1",
            Observable::EntropyMode2 => "entropy_mode2",
            Observable::ExcessEntropy => "excess_entropy",
        }
    }

    /// Needs the cat-times-coherent initial state.
    pub fn product_only(self) -> bool {
        matches!(
            self,
            Observable::CoherenceMode1
                | Observable::CoherenceMode2
                | Observable::FindCatMode1
                | Observable::FindCatMode2
                | Observable::FindCoherentMode1
                | Observable::FindCoherentMode2
        )
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Observable::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| {
            let names: Vec<_> = Observable::ALL.iter().map(|o| o.name()).collect();
            format!("unknown observable `{s}`; expected one of {}", names.join(", "))
        })
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialSpec {
    pub kind: StateKind,
    pub alpha: C64,
    /// Amplitude of the coherent state in mode 2; unused by the eigenstates.
    pub eta: C64,
    pub sign: Sign,
}

impl InitialSpec {
    pub fn product(alpha: f64, eta: f64) -> Self {
        InitialSpec { kind: StateKind::ProductCat, alpha: C64::new(alpha, 0.0), eta: C64::new(eta, 0.0), sign: Sign::Plus }
    }

    pub fn build(&self) -> oscnet::Result<InitialSuperposition> {
        match self.kind {
            StateKind::ProductCat => InitialSuperposition::cat_coherent(self.alpha, self.eta, self.sign),
            StateKind::EigenMinus => InitialSuperposition::eigen_minus(self.alpha, self.sign),
            StateKind::EigenPlus => InitialSuperposition::eigen_plus(self.alpha, self.sign),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Window end in units of 1/lambda.
    pub t_max_lambda: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    pub enabled: bool,
    /// Fock levels per mode; defaults to the truncation guard minimum.
    pub trunc: Option<usize>,
    pub dt: Option<f64>,
    pub t_max_lambda: f64,
    pub samples: usize,
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec { enabled: false, trunc: None, dt: None, t_max_lambda: 4.0 * std::f64::consts::PI, samples: 9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    /// Figure tag recorded in the manifest.
    pub figure: String,
    pub notes: Vec<String>,
    pub config: SystemConfig,
    pub initial: InitialSpec,
    pub observables: Vec<Observable>,
    pub grid: GridSpec,
    pub oracle: OracleSpec,
}

impl Scenario {
    pub fn check(&self) -> Result<()> {
        if self.grid.samples < 2 {
            return Err(CliError::invalid("grid.samples", format!("need at least 2 samples, got {}", self.grid.samples)));
        }
        if !(self.grid.t_max_lambda > 0.0) {
            return Err(CliError::invalid("grid.t_max_lambda", format!("must be > 0, got {}", self.grid.t_max_lambda)));
        }
        if self.oracle.samples < 2 || !(self.oracle.t_max_lambda > 0.0) {
            return Err(CliError::invalid("oracle", "needs samples >= 2 and t_max_lambda > 0".into()));
        }
        if self.observables.is_empty() {
            return Err(CliError::invalid("observables", "no observables requested".into()));
        }
        if self.initial.kind != StateKind::ProductCat {
            if let Some(o) = self.observables.iter().find(|o| o.product_only()) {
                return Err(CliError::invalid("observables", format!("`{o}` needs kind = \"cat_coherent\"")));
            }
        }
        self.config.validate()?;
        self.initial.build()?;
        Ok(())
    }
}

// ------------------------------------------------------------------ TOML

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexValue> for C64 {
    fn from(v: ComplexValue) -> C64 {
        match v {
            ComplexValue::Real(x) => C64::new(x, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectralFile {
    model: String,
    eps_plus: Option<f64>,
    eps_minus: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialFile {
    kind: Option<String>,
    alpha: ComplexValue,
    eta: Option<ComplexValue>,
    sign: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    t_max_lambda: Option<f64>,
    samples: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleFile {
    enabled: Option<bool>,
    trunc: Option<usize>,
    dt: Option<f64>,
    t_max_lambda: Option<f64>,
    samples: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: Option<String>,
    figure: Option<String>,
    notes: Option<Vec<String>>,
    omega10: Option<f64>,
    omega20: Option<f64>,
    lambda: f64,
    #[serde(rename = "F")]
    drive: Option<f64>,
    omega_drive: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
    spectral1: Option<SpectralFile>,
    spectral2: Option<SpectralFile>,
    regime: Option<String>,
    allow_fictitious_ratio: Option<bool>,
    gamma_at_drive1: Option<f64>,
    gamma_at_drive2: Option<f64>,
    observables: Vec<String>,
    initial: InitialFile,
    grid: Option<GridFile>,
    oracle: Option<OracleFile>,
}

/// 1-based line of the first `key = ...` assignment, or of a `[key]` table.
pub fn line_of(src: &str, key: &str) -> Option<usize> {
    src.lines().position(|l| {
        let l = l.trim_start();
        let assignment = l.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='));
        assignment || l.starts_with(&format!("[{key}]"))
    })
    .map(|i| i + 1)
}

fn line_at(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

fn spectral(f: Option<SpectralFile>, key: &'static str) -> std::result::Result<SpectralModel, (&'static str, String)> {
    let Some(f) = f else { return Ok(SpectralModel::MarkovianWhite) };
    let need = |v: Option<f64>, what: &str| v.ok_or((key, format!("model `{}` needs `{what}`", f.model)));
    match f.model.as_str() {
        "markovian" | "white" => Ok(SpectralModel::MarkovianWhite),
        "lorentzian" => Ok(SpectralModel::Lorentzian {
            eps_plus: need(f.eps_plus, "eps_plus")?,
            eps_minus: need(f.eps_minus, "eps_minus")?,
        }),
        "wide_lorentzian" => Ok(SpectralModel::WideLorentzian { eps_minus: need(f.eps_minus, "eps_minus")? }),
        other => Err((key, format!("unknown model `{other}`; expected markovian, lorentzian or wide_lorentzian"))),
    }
}

fn build(file: ScenarioFile, default_name: &str) -> std::result::Result<Scenario, (&'static str, String)> {
    let regime = match file.regime.as_deref().unwrap_or("strong") {
        "strong" => Regime::Strong,
        "weak" => Regime::Weak,
        other => return Err(("regime", format!("expected \"strong\" or \"weak\", got \"{other}\""))),
    };
    let config = SystemConfig {
        omega10: file.omega10.unwrap_or(1.0),
        omega20: file.omega20.unwrap_or(1.0),
        lambda: file.lambda,
        drive_amplitude: file.drive.unwrap_or(0.0),
        drive_frequency: file.omega_drive.unwrap_or(0.0),
        gamma_scale: [file.gamma1.unwrap_or(0.0), file.gamma2.unwrap_or(0.0)],
        spectral: [spectral(file.spectral1, "spectral1")?, spectral(file.spectral2, "spectral2")?],
        regime,
        allow_fictitious_ratio: file.allow_fictitious_ratio.unwrap_or(false),
        gamma_at_drive: [file.gamma_at_drive1, file.gamma_at_drive2],
    };
    let kind = match file.initial.kind.as_deref().unwrap_or("cat_coherent") {
        "cat_coherent" => StateKind::ProductCat,
        "eigen_minus" => StateKind::EigenMinus,
        "eigen_plus" => StateKind::EigenPlus,
        other => return Err(("kind", format!("unknown state kind `{other}`"))),
    };
    let sign = match file.initial.sign.as_deref().unwrap_or("+") {
        "+" | "plus" => Sign::Plus,
        "-" | "minus" => Sign::Minus,
        other => return Err(("sign", format!("expected \"+\" or \"-\", got \"{other}\""))),
    };
    let initial = InitialSpec {
        kind,
        alpha: file.initial.alpha.into(),
        eta: file.initial.eta.map(C64::from).unwrap_or(C64::new(0.0, 0.0)),
        sign,
    };
    let observables =
        file.observables.iter().map(|s| s.parse()).collect::<std::result::Result<Vec<_>, _>>().map_err(|e| ("observables", e))?;
    let grid = file.grid.as_ref();
    let mut oracle = OracleSpec::default();
    if let Some(o) = file.oracle {
        oracle.enabled = o.enabled.unwrap_or(false);
        oracle.trunc = o.trunc;
        oracle.dt = o.dt;
        oracle.t_max_lambda = o.t_max_lambda.unwrap_or(oracle.t_max_lambda);
        oracle.samples = o.samples.unwrap_or(oracle.samples);
    }
    Ok(Scenario {
        name: file.name.unwrap_or_else(|| default_name.to_string()),
        figure: file.figure.unwrap_or_else(|| "custom".into()),
        notes: file.notes.unwrap_or_default(),
        config,
        initial,
        observables,
        grid: GridSpec {
            t_max_lambda: grid.and_then(|g| g.t_max_lambda).unwrap_or(4.0 * std::f64::consts::PI),
            samples: grid.and_then(|g| g.samples).unwrap_or(2001),
        },
        oracle,
    })
}

/// Key in the file that a validation failure points at.
fn key_for(e: &CliError) -> Option<&'static str> {
    use oscnet::Error as E;
    match e {
        CliError::Invalid { key, .. } => Some(key),
        CliError::Core(E::InvalidParameter { name, .. }) => Some(match *name {
            "eps_plus" | "eps_minus" => "spectral1",
            "gamma_at_drive" => "gamma_at_drive1",
            "alpha" => "alpha",
            other => other,
        }),
        CliError::Core(E::CouplingTooWeak { .. }) => Some("lambda"),
        CliError::Core(E::DriveConstraint { .. }) => Some("F"),
        CliError::Core(E::DegenerateDrive { .. }) => Some("omega_drive"),
        _ => None,
    }
}

/// Parses and checks a scenario file. `origin` names the file in errors.
pub fn parse_scenario(src: &str, origin: &str) -> Result<Scenario> {
    let stem = std::path::Path::new(origin).file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    let file: ScenarioFile = toml::from_str(src).map_err(|e| CliError::Config {
        origin: origin.to_string(),
        line: e.span().map(|s| line_at(src, s.start)),
        message: e.message().to_string(),
    })?;
    let scenario = build(file, stem).map_err(|(key, message)| CliError::Config {
        origin: origin.to_string(),
        line: line_of(src, key),
        message,
    })?;
    scenario.check().map_err(|e| {
        let line = key_for(&e).and_then(|k| line_of(src, k));
        CliError::Config { origin: origin.to_string(), line, message: e.to_string() }
    })?;
    Ok(scenario)
}
