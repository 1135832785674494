//! Physical configuration, reservoir damping rates and derived coefficients.
//!
//! All frequencies and rates are expressed in units of the bare frequency of
//! oscillator 1, so `omega10 = 1` in every shipped scenario.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Reservoir spectral density around the two normal-mode frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralModel {
    /// Flat spectrum.
    MarkovianWhite,
    /// Narrow Lorentzian, suppressed at both normal modes: gamma(+/-) = eps(+/-) * Gamma / 2.
    Lorentzian { eps_plus: f64, eps_minus: f64 },
    /// Wide Lorentzian that only vanishes near the lower normal mode.
    WideLorentzian { eps_minus: f64 },
}

impl SpectralModel {
    fn check(&self) -> Result<()> {
        let ok = |name: &'static str, e: f64| {
            if e > 0.0 && e <= 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("{e} is outside (0, 1]"),
                })
            }
        };
        match *self {
            SpectralModel::MarkovianWhite => Ok(()),
            SpectralModel::Lorentzian {
                eps_plus,
                eps_minus,
            } => {
                ok("eps_plus", eps_plus)?;
                ok("eps_minus", eps_minus)
            }
            SpectralModel::WideLorentzian { eps_minus } => ok("eps_minus", eps_minus),
        }
    }
}

/// Oscillator-reservoir coupling regime.
///
/// `Weak` damps each mode at its own scale Gamma and drops the cross-decay
/// channel; `Strong` resolves the reservoir at the two normal modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regime {
    Weak,
    #[default]
    Strong,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub omega10: f64,
    pub omega20: f64,
    pub lambda: f64,
    /// F, amplitude of the classical drive on oscillator 2.
    pub drive_amplitude: f64,
    /// Frequency of the drive, which also sets the rotating frame.
    pub drive_frequency: f64,
    /// Gamma_1, Gamma_2.
    pub gamma_scale: [f64; 2],
    pub spectral: [SpectralModel; 2],
    pub regime: Regime,
    /// Lets lambda fall below 10 Gamma for exploratory runs.
    pub allow_fictitious_ratio: bool,
    /// Override for the reservoir rate at the drive frequency.
    pub gamma_at_drive: [Option<f64>; 2],
}

impl SystemConfig {
    /// Two identical undriven oscillators in the strong regime.
    pub fn identical(omega0: f64, lambda: f64, gamma: f64, model: SpectralModel) -> Self {
        SystemConfig {
            omega10: omega0,
            omega20: omega0,
            lambda,
            drive_amplitude: 0.0,
            drive_frequency: 0.0,
            gamma_scale: [gamma, gamma],
            spectral: [model, model],
            regime: Regime::Strong,
            allow_fictitious_ratio: false,
            gamma_at_drive: [None, None],
        }
    }

    /// Lab-frame frequencies of the two oscillators, including the coupling
    /// and drive shifts.
    pub fn dressed_frequencies(&self) -> [f64; 2] {
        let s = self.lambda * self.lambda / (4.0 * self.omega10 * self.omega20);
        [
            self.omega10 * (1.0 + s),
            self.omega20 * (1.0 + s + self.drive_amplitude / self.omega20),
        ]
    }

    /// Drive amplitude that makes both dressed frequencies equal.
    pub fn required_drive(&self) -> f64 {
        (self.omega10 - self.omega20)
            * (1.0 + self.lambda * self.lambda / (4.0 * self.omega10 * self.omega20))
    }

    /// Common frequency in the frame rotating at the drive frequency.
    pub fn rotating_frequency(&self) -> f64 {
        self.dressed_frequencies()[0] - self.drive_frequency
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be > 0, got {v}"),
                })
            }
        };
        let non_negative = |name: &'static str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be >= 0, got {v}"),
                })
            }
        };
        positive("omega10", self.omega10)?;
        positive("omega20", self.omega20)?;
        non_negative("lambda", self.lambda)?;
        non_negative("F", self.drive_amplitude)?;
        non_negative("omega_drive", self.drive_frequency)?;
        non_negative("gamma1", self.gamma_scale[0])?;
        non_negative("gamma2", self.gamma_scale[1])?;
        for g in self.gamma_at_drive.iter().flatten() {
            non_negative("gamma_at_drive", *g)?;
        }
        self.spectral[0].check()?;
        self.spectral[1].check()?;

        let limit = 10.0 * self.gamma_scale[0].max(self.gamma_scale[1]);
        if self.lambda < limit && !self.allow_fictitious_ratio {
            return Err(Error::CouplingTooWeak {
                lambda: self.lambda,
                limit,
            });
        }

        let [w1, w2] = self.dressed_frequencies();
        if self.drive_amplitude != 0.0 {
            if (w1 - w2).abs() > 1e-9 * w1 {
                return Err(Error::DriveConstraint {
                    given: self.drive_amplitude,
                    required: self.required_drive(),
                });
            }
        } else if self.omega10 != self.omega20 {
            log::warn!(
                "undriven oscillators with omega10 = {} != omega20 = {}; using Omega = omega1 - omega",
                self.omega10,
                self.omega20
            );
        }
        Ok(())
    }
}

/// Returns (omega+, omega-) = omega_l +/- lambda.
pub fn normal_mode_frequencies(config: &SystemConfig) -> (f64, f64) {
    let w = config.dressed_frequencies()[0];
    (w + config.lambda, w - config.lambda)
}

/// Reservoir rates at the two normal modes and at the drive, per oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingRates {
    pub gamma_plus: [f64; 2],
    pub gamma_minus: [f64; 2],
    pub gamma_at_drive: [f64; 2],
}

impl DampingRates {
    pub fn total(&self) -> f64 {
        self.gamma_plus.iter().chain(&self.gamma_minus).sum()
    }

    pub fn sum_plus(&self) -> f64 {
        self.gamma_plus[0] + self.gamma_plus[1]
    }

    pub fn sum_minus(&self) -> f64 {
        self.gamma_minus[0] + self.gamma_minus[1]
    }
}

pub fn evaluate_rates(config: &SystemConfig) -> Result<DampingRates> {
    let mut r = DampingRates {
        gamma_plus: [0.0; 2],
        gamma_minus: [0.0; 2],
        gamma_at_drive: [0.0; 2],
    };
    for l in 0..2 {
        config.spectral[l].check()?;
        let g = config.gamma_scale[l];
        let (p, m) = match config.regime {
            Regime::Weak => (g / 2.0, g / 2.0),
            Regime::Strong => match config.spectral[l] {
                // the lower normal mode sits at the edge of the spectrum when undriven,
                // so only half the peak contributes
                SpectralModel::MarkovianWhite if config.drive_amplitude == 0.0 => {
                    (g / 2.0, g / 4.0)
                }
                SpectralModel::MarkovianWhite => (g / 2.0, g / 2.0),
                SpectralModel::Lorentzian {
                    eps_plus,
                    eps_minus,
                } => (eps_plus * g / 2.0, eps_minus * g / 2.0),
                SpectralModel::WideLorentzian { eps_minus } => (g / 2.0, eps_minus * g / 2.0),
            },
        };
        r.gamma_plus[l] = p;
        r.gamma_minus[l] = m;
        r.gamma_at_drive[l] = config.gamma_at_drive[l].unwrap_or(g / 2.0);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoefficients {
    /// Omega, common rotating-frame frequency.
    pub big_omega: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub lambda: f64,
    pub drive: f64,
    /// Lambda = sum(gamma)/4 + i Omega.
    pub big_lambda: C64,
    pub delta: f64,
    pub phi: f64,
    pub theta: f64,
    pub e_plus: [C64; 2],
    pub e_minus: [C64; 2],
    pub b: [C64; 2],
    pub g: [C64; 2],
    pub pi: [f64; 2],
    /// Coefficient c_l of the commutator c_l [rho, a_l - a_l^dag] that the
    /// drive adds to each dissipator.
    pub drive_correction: [f64; 2],
}

pub fn derive_coefficients(
    config: &SystemConfig,
    rates: &DampingRates,
) -> Result<DerivedCoefficients> {
    let om = config.rotating_frequency();
    let lam = config.lambda;
    let f = config.drive_amplitude;
    let (gp, gm, gd) = (rates.gamma_plus, rates.gamma_minus, rates.gamma_at_drive);
    let (omega_plus, omega_minus) = normal_mode_frequencies(config);

    let mut c = [0.0; 2];
    if f != 0.0 {
        let gap = om * om - lam * lam;
        if gap.abs() <= 1e-9 * (om * om).max(lam * lam) {
            return Err(Error::DegenerateDrive { gap });
        }
        let k = f / (2.0 * gap);
        // (Omega d_l1 - lambda d_l2) and (Omega d_l2 - lambda d_l1)
        let same = [om, -lam];
        let cross = [-lam, om];
        for l in 0..2 {
            c[l] = k * (same[l] * (gm[l] - gp[l]) + cross[l] * (2.0 * gd[l] - gm[l] - gp[l]));
        }
    }

    let i = C64::i();
    let e_plus = [0, 1].map(|l| C64::new((gp[l] + gm[l]) / 2.0, om));
    let e_minus = [0, 1].map(|l| C64::new((gp[l] - gm[l]) / 2.0, lam));
    let b = [C64::new(-c[0], 0.0), i * f - c[1]];
    let g = if f == 0.0 {
        [C64::new(0.0, 0.0); 2]
    } else {
        let det = e_plus[0] * e_plus[1] - e_minus[0] * e_minus[1];
        [
            (b[1] * e_minus[0] - b[0] * e_plus[1]) / det,
            (b[0] * e_minus[1] - b[1] * e_plus[0]) / det,
        ]
    };

    Ok(DerivedCoefficients {
        big_omega: om,
        omega_plus,
        omega_minus,
        lambda: lam,
        drive: f,
        big_lambda: C64::new((gp[0] + gp[1] + gm[0] + gm[1]) / 4.0, om),
        delta: (gp[0] - gp[1] + gm[0] - gm[1]) / 4.0,
        phi: (gp[0] + gp[1] - gm[0] - gm[1]) / 4.0,
        theta: (gp[0] - gp[1] - gm[0] + gm[1]) / 4.0,
        e_plus,
        e_minus,
        b,
        g,
        pi: [(gp[0] + gm[0]) / 2.0, (gp[1] + gm[1]) / 2.0],
        drive_correction: c,
    })
}

/// Validates the configuration, evaluates rates and derives all coefficients.
pub fn resolve(config: &SystemConfig) -> Result<(DampingRates, DerivedCoefficients)> {
    config.validate()?;
    let rates = evaluate_rates(config)?;
    let coeffs = derive_coefficients(config, &rates)?;
    Ok((rates, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn no_coupling_no_split() {
        let c = SystemConfig::identical(1.0, 0.0, 0.0, SpectralModel::MarkovianWhite);
        assert_eq!(normal_mode_frequencies(&c), (1.0, 1.0));
    }

    #[test]
    fn lower_mode_vanishes_at_lambda_two() {
        let c = SystemConfig::identical(1.0, 2.0, 0.0, SpectralModel::MarkovianWhite);
        let (p, m) = normal_mode_frequencies(&c);
        assert!(close(p, 4.0, 1e-15) && close(m, 0.0, 1e-15));
    }

    #[test]
    fn weak_split() {
        let c = SystemConfig::identical(1.0, 0.02, 0.0, SpectralModel::MarkovianWhite);
        let (p, m) = normal_mode_frequencies(&c);
        // 1 + 0.0004/4 = 1.0001
        assert!(close(p, 1.0201, 1e-14), "{p}");
        assert!(close(m, 0.9801, 1e-14), "{m}");
    }

    #[test]
    fn markovian_rates() {
        let c = SystemConfig::identical(1.0, 20.0, 1.0, SpectralModel::MarkovianWhite);
        let r = evaluate_rates(&c).unwrap();
        assert_eq!(r.gamma_plus, [0.5, 0.5]);
        assert_eq!(r.gamma_minus, [0.25, 0.25]);
        assert_eq!(r.gamma_at_drive, [0.5, 0.5]);
    }

    #[test]
    fn wide_lorentzian_rates() {
        let c = SystemConfig::identical(
            1.0,
            20.0,
            1.0,
            SpectralModel::WideLorentzian { eps_minus: 0.01 },
        );
        let r = evaluate_rates(&c).unwrap();
        assert_eq!(r.gamma_plus[0], 0.5);
        assert!(close(r.gamma_minus[0], 0.005, 1e-15));
    }

    #[test]
    fn lorentzian_rates_equal() {
        let m = SpectralModel::Lorentzian {
            eps_plus: 0.1,
            eps_minus: 0.1,
        };
        let c = SystemConfig::identical(1.0, 20.0, 2.0, m);
        let r = evaluate_rates(&c).unwrap();
        assert!(close(r.gamma_plus[1], 0.1, 1e-15) && close(r.gamma_minus[1], 0.1, 1e-15));
    }

    #[test]
    fn eps_out_of_range() {
        let m = SpectralModel::Lorentzian {
            eps_plus: 0.0,
            eps_minus: 0.1,
        };
        let c = SystemConfig::identical(1.0, 20.0, 2.0, m);
        assert!(matches!(
            evaluate_rates(&c),
            Err(Error::InvalidParameter { .. })
        ));
        let m = SpectralModel::WideLorentzian { eps_minus: 1.5 };
        let c = SystemConfig::identical(1.0, 20.0, 2.0, m);
        assert!(evaluate_rates(&c).is_err());
    }

    #[test]
    fn driven_markovian_doubles_lower_rate() {
        let mut c = SystemConfig::identical(1.0, 0.02, 1e-3, SpectralModel::MarkovianWhite);
        c.omega20 = 0.5;
        c.drive_amplitude = c.required_drive();
        let r = evaluate_rates(&c).unwrap();
        assert_eq!(r.gamma_minus, [5e-4, 5e-4]);
    }

    #[test]
    fn weak_regime_rates() {
        let mut c = SystemConfig::identical(
            1.0,
            1.0,
            0.02,
            SpectralModel::WideLorentzian { eps_minus: 0.01 },
        );
        c.regime = Regime::Weak;
        let r = evaluate_rates(&c).unwrap();
        assert_eq!(r.gamma_plus, [0.01, 0.01]);
        assert_eq!(r.gamma_minus, [0.01, 0.01]);
    }

    #[test]
    fn undriven_coefficients_vanish() {
        let c = SystemConfig::identical(1.0, 1.0, 0.05, SpectralModel::MarkovianWhite);
        let (_, d) = resolve(&c).unwrap();
        assert_eq!(d.b, [C64::new(0.0, 0.0); 2]);
        assert_eq!(d.g, [C64::new(0.0, 0.0); 2]);
    }

    #[test]
    fn lossless_coefficients() {
        let mut c = SystemConfig::identical(1.0, 0.0, 0.0, SpectralModel::MarkovianWhite);
        c.lambda = 0.0;
        let (_, d) = resolve(&c).unwrap();
        assert_eq!(d.big_lambda, C64::new(0.0, 1.0));
        assert_eq!((d.delta, d.phi, d.theta), (0.0, 0.0, 0.0));
    }

    #[test]
    fn markovian_coefficients() {
        let c = SystemConfig::identical(1.0, 20.0, 1.0, SpectralModel::MarkovianWhite);
        let (_, d) = resolve(&c).unwrap();
        assert!(close(d.big_lambda.re, 0.375, 1e-15));
        assert!(close(d.big_lambda.im, d.big_omega, 0.0));
        assert_eq!((d.delta, d.theta), (0.0, 0.0));
        assert!(close(d.phi, 0.125, 1e-15));
        assert!(close(d.big_lambda.re, (d.pi[0] + d.pi[1]) / 2.0, 1e-15));
    }

    #[test]
    fn validity_guard() {
        let c = SystemConfig::identical(1.0, 2.0, 0.4, SpectralModel::MarkovianWhite);
        assert!(matches!(c.validate(), Err(Error::CouplingTooWeak { .. })));
        let c = SystemConfig {
            allow_fictitious_ratio: true,
            ..c
        };
        assert!(c.validate().is_ok());
    }

    #[test]
    fn drive_constraint_enforced() {
        let mut c = SystemConfig::identical(1.0, 0.02, 0.0, SpectralModel::MarkovianWhite);
        c.omega20 = 0.5;
        c.drive_amplitude = 0.5;
        match c.validate() {
            Err(Error::DriveConstraint { required, .. }) => assert!(close(required, 0.5001, 1e-12)),
            other => panic!("{other:?}"),
        }
        c.drive_amplitude = 0.5001;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn lossless_drive_offset() {
        let mut c = SystemConfig::identical(1.0, 0.02, 0.0, SpectralModel::MarkovianWhite);
        c.omega20 = 0.5;
        c.drive_amplitude = 0.5001;
        c.drive_frequency = 0.01;
        let (_, d) = resolve(&c).unwrap();
        let want = 0.5001 / (d.big_omega - d.lambda);
        assert!(((d.g[0] - d.g[1]).re - want).abs() < 1e-12);
        assert!((d.g[0] - d.g[1]).im.abs() < 1e-12);
    }

    #[test]
    fn degenerate_drive_rejected() {
        let mut c = SystemConfig::identical(1.0, 0.02, 0.0, SpectralModel::MarkovianWhite);
        c.omega20 = 0.5;
        c.drive_amplitude = 0.5001;
        c.drive_frequency = 1.0002 - 0.02;
        assert!(matches!(resolve(&c), Err(Error::DegenerateDrive { .. })));
    }

    #[test]
    fn deterministic() {
        let c = SystemConfig::identical(
            1.0,
            3.0,
            0.1,
            SpectralModel::Lorentzian {
                eps_plus: 0.3,
                eps_minus: 0.2,
            },
        );
        assert_eq!(resolve(&c).unwrap(), resolve(&c).unwrap());
    }
}
