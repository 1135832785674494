//! Probabilities, coherence factors, decoherence times and entropies.

use num_complex::Complex64 as C64;

use crate::closed_form::{
    InitialSuperposition, JointStateSnapshot, Mode, ReducedStateSnapshot, Sign,
};
use crate::coherent::{overlap, overlap2};
use crate::error::{Error, Result};
use crate::params::DampingRates;

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub label: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(label: impl Into<String>, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Dimension {
                expected: times.len(),
                got: values.len(),
            });
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadGrid);
        }
        Ok(TimeSeries {
            label: label.into(),
            times,
            values,
        })
    }

    /// Evaluates `f` at every time point.
    pub fn sample(
        label: impl Into<String>,
        times: &[f64],
        f: impl Fn(f64) -> Result<f64>,
    ) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Self::new(label, times.to_vec(), values)
    }

    pub fn max(&self) -> (f64, f64) {
        self.times
            .iter()
            .zip(&self.values)
            .fold((f64::NAN, f64::NEG_INFINITY), |acc, (&t, &v)| {
                if v > acc.1 {
                    (t, v)
                } else {
                    acc
                }
            })
    }
}

/// Evenly spaced grid with `samples` points on [0, t_max].
pub fn uniform_grid(t_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

/// Tr[rho_a rho_b] for two operators sum C_mn |x_m><x_n|.
fn trace_product<L: Copy>(
    ca: &[[C64; 2]; 2],
    la: &[L; 2],
    cb: &[[C64; 2]; 2],
    lb: &[L; 2],
    ov: impl Fn(L, L) -> C64,
) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for m in 0..2 {
        for n in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    s += ca[m][n] * cb[k][l] * ov(la[n], lb[k]) * ov(lb[l], la[m]);
                }
            }
        }
    }
    s
}

impl JointStateSnapshot {
    /// Partial trace over the other mode, sum C_mn <y_n|y_m> |x_m><x_n|.
    pub fn partial_trace(&self, keep: Mode) -> ReducedStateSnapshot {
        let mut coeffs = self.coeffs;
        let pick = |u: (C64, C64)| match keep {
            Mode::One => (u.0, u.1),
            Mode::Two => (u.1, u.0),
        };
        for m in 0..2 {
            for n in 0..2 {
                let (_, ym) = pick(self.labels[m]);
                let (_, yn) = pick(self.labels[n]);
                coeffs[m][n] *= overlap(yn, ym);
            }
        }
        ReducedStateSnapshot {
            t: self.t,
            mode: keep,
            labels: [pick(self.labels[0]).0, pick(self.labels[1]).0],
            coeffs,
        }
    }

    pub fn purity(&self) -> f64 {
        trace_product(
            &self.coeffs,
            &self.labels,
            &self.coeffs,
            &self.labels,
            overlap2,
        )
        .re
    }
}

impl ReducedStateSnapshot {
    pub fn purity(&self) -> f64 {
        trace_product(
            &self.coeffs,
            &self.labels,
            &self.coeffs,
            &self.labels,
            overlap,
        )
        .re
    }
}

/// P_R = Tr[rho12(t) rho12(0)].
pub fn recurrence_probability(init: &InitialSuperposition, s: &JointStateSnapshot) -> f64 {
    let z = init.at_zero();
    trace_product(&s.coeffs, &s.labels, &z.coeffs, &z.labels, overlap2).re
}

/// P_S = Tr[rho12(t) rho12(0) with modes 1 and 2 exchanged].
pub fn swap_probability(init: &InitialSuperposition, s: &JointStateSnapshot) -> f64 {
    recurrence_probability(&init.swapped(), s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    /// Cat in mode 1 times a coherent state in mode 2.
    ProductCat,
    /// N(|a,-a> +/- |-a,a>).
    EigenMinus,
    /// N(|a,a> +/- |-a,-a>).
    EigenPlus,
}

pub fn coherence_factor_joint(kind: StateKind, rates: &DampingRates, alpha: C64, t: f64) -> f64 {
    let a2 = alpha.norm_sqr();
    let (sp, sm) = (rates.sum_plus(), rates.sum_minus());
    match kind {
        StateKind::ProductCat => (-a2 * (2.0 - (-sp * t).exp() - (-sm * t).exp())).exp(),
        StateKind::EigenMinus => (-4.0 * a2 * (1.0 - (-sm * t).exp())).exp(),
        StateKind::EigenPlus => (-4.0 * a2 * (1.0 - (-sp * t).exp())).exp(),
    }
}

/// Cat coherence carried by one mode of the cat-times-coherent state.
///
/// Normalised so that it starts at 1 in mode 1; in mode 2 it starts at
/// exp(-2|alpha|^2) because the coherence has not moved there yet.
pub fn coherence_factor_reduced(
    mode: Mode,
    rates: &DampingRates,
    lambda: f64,
    alpha: C64,
    t: f64,
) -> f64 {
    let (sp, sm) = (rates.sum_plus(), rates.sum_minus());
    let phase = match mode {
        Mode::One => 0.0,
        Mode::Two => std::f64::consts::PI,
    };
    let f = (-sp * t).exp()
        + (-sm * t).exp()
        + 2.0 * (2.0 * lambda * t + phase).cos() * (-(sp + sm) * t / 2.0).exp();
    (-2.0 * alpha.norm_sqr() * (1.0 - f / 4.0)).exp()
}

/// Cat coherence of a single uncoupled oscillator with damping gamma.
pub fn coherence_factor_isolated(gamma: f64, alpha: C64, t: f64) -> f64 {
    (-2.0 * alpha.norm_sqr() * (1.0 - (-gamma * t).exp())).exp()
}

/// |C_I,II(t)| / N^2 for the cat-times-coherent state, read off the
/// reduced state of one mode.
pub fn reduced_offdiagonal_ratio(init: &InitialSuperposition, r: &ReducedStateSnapshot) -> f64 {
    r.coeffs[0][1].norm() / (init.norm * init.norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationTime {
    Finite(f64),
    /// Cross-decay channel absent.
    Unbounded,
}

impl CorrelationTime {
    pub fn value(self) -> Option<f64> {
        match self {
            CorrelationTime::Finite(v) => Some(v),
            CorrelationTime::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceReport {
    /// Joint-state decoherence time of the cat-times-coherent state.
    pub tau_d: f64,
    /// tau_R / 2|alpha|^2 for an isolated oscillator with the reference Gamma.
    pub tau_d_reference: f64,
    pub ratio: f64,
    pub tau_c: CorrelationTime,
    /// tau_C / tau_D.
    pub tau_ratio: Option<f64>,
    pub tau_eigen_minus: f64,
    pub tau_eigen_plus: f64,
}

/// Decoherence times from the linearised exponents.
///
/// `gamma_reference` is Gamma of the oscillator that holds the cat.
pub fn decoherence_report(
    rates: &DampingRates,
    alpha: f64,
    gamma_reference: f64,
) -> Result<DecoherenceReport> {
    if rates.total() == 0.0 {
        return Err(Error::NoDissipation);
    }
    let a = alpha.abs();
    if a == 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must be nonzero".into(),
        });
    }
    if !(gamma_reference > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma_reference",
            reason: "must be > 0".into(),
        });
    }
    let a2 = a * a;
    let (sp, sm) = (rates.sum_plus(), rates.sum_minus());
    let tau_d = 1.0 / (a2 * (sp + sm));
    let tau_d_reference = 1.0 / (2.0 * a2 * gamma_reference);
    let cross = sp - sm;
    let tau_c = if cross == 0.0 {
        CorrelationTime::Unbounded
    } else {
        CorrelationTime::Finite(1.0 / (5.0 * a * cross.abs()))
    };
    Ok(DecoherenceReport {
        tau_d,
        tau_d_reference,
        ratio: tau_d / tau_d_reference,
        tau_c,
        tau_ratio: tau_c.value().map(|c| c / tau_d),
        tau_eigen_minus: 1.0 / (4.0 * a2 * sm),
        tau_eigen_plus: 1.0 / (4.0 * a2 * sp),
    })
}

/// First time at which `factor` falls to 1/e, by bisection on [0, t_max].
pub fn e_fold_time(factor: impl Fn(f64) -> f64, t_max: f64) -> Option<f64> {
    let target = (-1.0f64).exp();
    let n = 2000;
    let mut prev = 0.0;
    for k in 1..=n {
        let t = t_max * k as f64 / n as f64;
        if factor(t) <= target {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if factor(mid) <= target {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = t;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Cat { alpha: C64, sign: Sign },
    Coherent(C64),
}

/// <psi|rho_l|psi> for a cat or coherent target state.
pub fn find_state_probability(r: &ReducedStateSnapshot, target: Target) -> f64 {
    match target {
        Target::Coherent(b) => r.matrix_element(b, b).re,
        Target::Cat { alpha, sign } => {
            let s = sign.value();
            let n2 = 1.0 / (2.0 + 2.0 * s * overlap(-alpha, alpha).re);
            let branches = [(alpha, 1.0), (-alpha, s)];
            let mut sum = C64::new(0.0, 0.0);
            for &(x, sx) in &branches {
                for &(y, sy) in &branches {
                    sum += sx * sy * r.matrix_element(x, y);
                }
            }
            n2 * sum.re
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies {
    pub s12: f64,
    pub s1: f64,
    pub s2: f64,
    /// S1 + S2 - S12.
    pub excess: f64,
}

pub fn linear_entropies(s: &JointStateSnapshot) -> Entropies {
    let s12 = 1.0 - s.purity();
    let s1 = 1.0 - s.partial_trace(Mode::One).purity();
    let s2 = 1.0 - s.partial_trace(Mode::Two).purity();
    Entropies {
        s12,
        s1,
        s2,
        excess: s1 + s2 - s12,
    }
}
