//! Analytic solution of the zero-temperature drift equation and the evolved
//! two-dyad density operators.
//!
//! Sign conventions. [`characteristic_trajectories`] is the backward
//! characteristic of the drift equation, d(alpha)/dt = B + E alpha, and grows
//! as e^{Re(Lambda) t}. The evolved labels in [`evolve_labels`] use the
//! forward map with e^{-Lambda t} and the pattern (W-, -Z+) for mode 1 and
//! (W+, -Z-) for mode 2. The forward 2x2 matrix is the adjugate of the
//! backward one, so the two maps invert each other whenever
//! W+W- - Z+Z- = 1. That holds exactly for identical oscillators and to
//! O((gamma/lambda)^2) otherwise. Both conventions were checked against a
//! brute-force Fock integration of the master equation.

use num_complex::Complex64 as C64;

use crate::coherent::{log_overlap, overlap, overlap2};
use crate::error::{Error, Result};
use crate::params::DerivedCoefficients;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorSample {
    pub t: f64,
    pub w_plus: C64,
    pub w_minus: C64,
    pub z_plus: C64,
    pub z_minus: C64,
    pub exp_neg_lambda_t: C64,
    /// e^{-Lambda t} times (W+, W-, Z+, Z-), formed without the overflow of
    /// cosh(Phi t) at long times.
    pub damped: [C64; 4],
}

pub fn propagator(c: &DerivedCoefficients, t: f64) -> Result<PropagatorSample> {
    if c.lambda == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let (ch, sh) = ((c.phi * t).cosh(), (c.phi * t).sinh());
    let (s, co) = (c.lambda * t).sin_cos();
    let d = c.delta / c.lambda;
    let th = c.theta / c.lambda;
    // e^{-Re(Lambda) t} cosh(Phi t) and e^{-Re(Lambda) t} sinh(Phi t)
    let (up, dn) = (
        ((c.phi - c.big_lambda.re) * t).exp(),
        ((-c.phi - c.big_lambda.re) * t).exp(),
    );
    let (dch, dsh) = (0.5 * (up + dn), 0.5 * (up - dn));
    let rot = C64::from_polar(1.0, -c.big_lambda.im * t);
    let damped = [
        C64::new(dch * (co + d * s), dsh * (s - d * co)),
        C64::new(dch * (co - d * s), dsh * (s + d * co)),
        C64::new(dsh * co + th * dch * s, dch * s - th * dsh * co),
        C64::new(dsh * co - th * dch * s, dch * s + th * dsh * co),
    ]
    .map(|z| z * rot);
    Ok(PropagatorSample {
        t,
        w_plus: C64::new(ch * (co + d * s), sh * (s - d * co)),
        w_minus: C64::new(ch * (co - d * s), sh * (s + d * co)),
        z_plus: C64::new(sh * co + th * ch * s, ch * s - th * sh * co),
        z_minus: C64::new(sh * co - th * ch * s, ch * s + th * sh * co),
        exp_neg_lambda_t: (-c.big_lambda * t).exp(),
        damped,
    })
}

/// Backward characteristics carrying the initial P-function to time t.
pub fn characteristic_trajectories(
    c: &DerivedCoefficients,
    alpha1_0: C64,
    alpha2_0: C64,
    t: f64,
) -> Result<(C64, C64)> {
    let p = propagator(c, t)?;
    let e = (c.big_lambda * t).exp();
    let (d1, d2) = (alpha1_0 - c.g[0], alpha2_0 - c.g[1]);
    Ok((
        e * (d1 * p.w_plus + d2 * p.z_plus) + c.g[0],
        e * (d2 * p.w_minus + d1 * p.z_minus) + c.g[1],
    ))
}

/// Forward map of a coherent pair (beta1, beta2) to its labels at p.t.
pub fn labels_at(
    c: &DerivedCoefficients,
    p: &PropagatorSample,
    beta1: C64,
    beta2: C64,
) -> (C64, C64) {
    let (d1, d2) = (beta1 - c.g[0], beta2 - c.g[1]);
    let [wp, wm, zp, zm] = p.damped;
    (d1 * wm - d2 * zp + c.g[0], d2 * wp - d1 * zm + c.g[1])
}

pub fn evolve_labels(
    c: &DerivedCoefficients,
    beta1: C64,
    beta2: C64,
    t: f64,
) -> Result<(C64, C64)> {
    let p = propagator(c, t)?;
    Ok(labels_at(c, &p, beta1, beta2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// N (|beta_I^1, beta_I^2> +/- |beta_II^1, beta_II^2>).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialSuperposition {
    /// beta[m] = (mode-1 amplitude, mode-2 amplitude) of branch m.
    pub beta: [(C64, C64); 2],
    pub sign: Sign,
    pub norm: f64,
}

impl InitialSuperposition {
    pub fn new(beta_i: (C64, C64), beta_ii: (C64, C64), sign: Sign) -> Result<Self> {
        let ov = overlap2(beta_ii, beta_i).re;
        let n2 = 1.0 / (2.0 + 2.0 * sign.value() * ov);
        if !n2.is_finite() || n2 <= 0.0 || 2.0 + 2.0 * sign.value() * ov < 1e-14 {
            return Err(Error::InvalidParameter {
                name: "initial state",
                reason: "superposition has zero norm".into(),
            });
        }
        Ok(InitialSuperposition {
            beta: [beta_i, beta_ii],
            sign,
            norm: n2.sqrt(),
        })
    }

    /// Cat in mode 1, coherent state in mode 2.
    pub fn cat_coherent(alpha: C64, eta: C64, sign: Sign) -> Result<Self> {
        Self::new((alpha, eta), (-alpha, eta), sign)
    }

    /// Entangled state N(|a,-a> +/- |-a,a>) tied to the lower normal mode.
    pub fn eigen_minus(alpha: C64, sign: Sign) -> Result<Self> {
        Self::new((alpha, -alpha), (-alpha, alpha), sign)
    }

    /// Entangled state N(|a,a> +/- |-a,-a>) tied to the upper normal mode.
    pub fn eigen_plus(alpha: C64, sign: Sign) -> Result<Self> {
        Self::new((alpha, alpha), (-alpha, -alpha), sign)
    }

    /// The same state with the two modes exchanged.
    pub fn swapped(&self) -> Self {
        let s = |b: (C64, C64)| (b.1, b.0);
        InitialSuperposition {
            beta: [s(self.beta[0]), s(self.beta[1])],
            ..*self
        }
    }

    pub fn initial_coefficients(&self) -> [[C64; 2]; 2] {
        let n2 = self.norm * self.norm;
        let off = n2 * self.sign.value();
        [
            [C64::new(n2, 0.0), C64::new(off, 0.0)],
            [C64::new(off, 0.0), C64::new(n2, 0.0)],
        ]
    }

    pub fn at_zero(&self) -> JointStateSnapshot {
        JointStateSnapshot {
            t: 0.0,
            labels: self.beta,
            coeffs: self.initial_coefficients(),
            phases: [[Phases::default(); 2]; 2],
        }
    }

    pub fn max_amplitude(&self) -> f64 {
        self.beta
            .iter()
            .flat_map(|b| [b.0.norm(), b.1.norm()])
            .fold(0.0, f64::max)
    }
}

/// theta(1..4) for one (m, n) pair. theta(2) and theta(4) are complex.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phases {
    pub theta1: f64,
    pub theta2: C64,
    pub theta3: f64,
    pub theta4: C64,
}

/// rho12(t) = sum_mn C_mn |s_m, z_m><s_n, z_n|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointStateSnapshot {
    pub t: f64,
    /// (varsigma_m, zeta_m): labels of modes 1 and 2 for branch m.
    pub labels: [(C64, C64); 2],
    pub coeffs: [[C64; 2]; 2],
    pub phases: [[Phases; 2]; 2],
}

impl JointStateSnapshot {
    pub fn trace(&self) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for m in 0..2 {
            for n in 0..2 {
                s += self.coeffs[m][n] * overlap2(self.labels[n], self.labels[m]);
            }
        }
        s
    }

    /// <x|rho12|y> for coherent product states x, y.
    pub fn matrix_element(&self, x: (C64, C64), y: (C64, C64)) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for m in 0..2 {
            for n in 0..2 {
                s += self.coeffs[m][n] * overlap2(x, self.labels[m]) * overlap2(self.labels[n], y);
            }
        }
        s
    }
}

fn phases(c: &DerivedCoefficients, p: &PropagatorSample, bm: (C64, C64), bn: (C64, C64)) -> Phases {
    // all products below carry exactly one factor e^{-Lambda t} or its conjugate per W, Z
    let [wp, wm, zp, zm] = p.damped;
    let (g1, g2) = (c.g[0], c.g[1]);
    let (b1m, b2m, b1n, b2n) = (bm.0, bm.1, bn.0, bn.1);
    let d1c = b1m.conj() - b1n.conj();
    let d2c = b2m.conj() - b2n.conj();

    let theta1 = ((wp.conj() * d2c - zm.conj() * d1c) * (g1 * zm - g2 * wp + g2)).im;
    let theta3 = ((wm.conj() * d1c - zp.conj() * d2c) * (g2 * zp - g1 * wm + g1)).im;
    let theta2 = 0.5
        * (wp * zm.conj() * (b1n.conj() * (b2m - b2n) - d1c * b2m)
            - wp.conj() * zm * (b1m * d2c - (b1m - b1n) * b2n.conj()));
    let theta4 = 0.5
        * (wm * zp.conj() * ((b1m - b1n) * b2n.conj() - b1m * d2c)
            - wm.conj() * zp * (d1c * b2m - b1n.conj() * (b2m - b2n)));
    Phases {
        theta1,
        theta2,
        theta3,
        theta4,
    }
}

/// |W+|^2, |W-|^2, |Z+|^2, |Z-|^2, each scaled by |e^{-Lambda t}|^2.
fn decay_exponents(p: &PropagatorSample) -> (f64, f64, f64, f64) {
    let [wp, wm, zp, zm] = p.damped;
    (wp.norm_sqr(), wm.norm_sqr(), zp.norm_sqr(), zm.norm_sqr())
}

pub fn evolve_joint_state(
    init: &InitialSuperposition,
    c: &DerivedCoefficients,
    t: f64,
) -> Result<JointStateSnapshot> {
    let p = propagator(c, t)?;
    Ok(evolve_with(init, c, &p))
}

/// Same as [`evolve_joint_state`] with a precomputed propagator sample.
pub fn evolve_with(
    init: &InitialSuperposition,
    c: &DerivedCoefficients,
    p: &PropagatorSample,
) -> JointStateSnapshot {
    let (wp, wm, zp, zm) = decay_exponents(p);
    let p1 = 1.0 - (wm + zm);
    let p2 = 1.0 - (wp + zp);
    let c0 = init.initial_coefficients();
    let b = init.beta;
    let mut coeffs = [[C64::new(0.0, 0.0); 2]; 2];
    let mut ph = [[Phases::default(); 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            let th = phases(c, p, b[m], b[n]);
            let expo = p1 * log_overlap(b[n].0, b[m].0)
                + p2 * log_overlap(b[n].1, b[m].1)
                + C64::i() * (th.theta1 + th.theta3)
                + th.theta2
                + th.theta4;
            coeffs[m][n] = c0[m][n] * expo.exp();
            ph[m][n] = th;
        }
    }
    JointStateSnapshot {
        t: p.t,
        labels: [
            labels_at(c, p, b[0].0, b[0].1),
            labels_at(c, p, b[1].0, b[1].1),
        ],
        coeffs,
        phases: ph,
    }
}

/// Coefficients for the cat-times-coherent state written with the overlap
/// exponent e^{-2|alpha|^2 (...)} and the phase Im(theta2 + theta4). The
/// overlap factor only applies off the diagonal.
pub fn cat_coherent_coefficients(
    alpha: C64,
    eta: C64,
    sign: Sign,
    c: &DerivedCoefficients,
    t: f64,
) -> Result<[[C64; 2]; 2]> {
    let init = InitialSuperposition::cat_coherent(alpha, eta, sign)?;
    let p = propagator(c, t)?;
    let (_, wm, _, zm) = decay_exponents(&p);
    let c0 = init.initial_coefficients();
    let mut out = c0;
    for m in 0..2 {
        for n in 0..2 {
            if m == n {
                continue;
            }
            let th = phases(c, &p, init.beta[m], init.beta[n]);
            let mag = (-2.0 * alpha.norm_sqr() * (1.0 - (wm + zm))).exp();
            let ph = th.theta1 + th.theta3 + (th.theta2 + th.theta4).im;
            out[m][n] = c0[m][n] * mag * C64::from_polar(1.0, ph);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    pub fn index(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 1,
        }
    }
}

/// rho_l(t) = sum_mn R_mn |x_m><x_n| on a single mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedStateSnapshot {
    pub t: f64,
    pub mode: Mode,
    pub labels: [C64; 2],
    pub coeffs: [[C64; 2]; 2],
}

impl ReducedStateSnapshot {
    pub fn trace(&self) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for m in 0..2 {
            for n in 0..2 {
                s += self.coeffs[m][n] * overlap(self.labels[n], self.labels[m]);
            }
        }
        s
    }

    /// <x|rho|y> for coherent x, y.
    pub fn matrix_element(&self, x: C64, y: C64) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for m in 0..2 {
            for n in 0..2 {
                s += self.coeffs[m][n] * overlap(x, self.labels[m]) * overlap(self.labels[n], y);
            }
        }
        s
    }
}

/// Reduced state of one mode, from the initial state and the propagator.
pub fn reduce_to_mode(
    init: &InitialSuperposition,
    c: &DerivedCoefficients,
    snapshot: &JointStateSnapshot,
    mode: Mode,
) -> Result<ReducedStateSnapshot> {
    let p = propagator(c, snapshot.t)?;
    let (wp, wm, zp, zm) = decay_exponents(&p);
    let (q1, q2) = match mode {
        Mode::One => (1.0 - wm, 1.0 - zp),
        Mode::Two => (1.0 - zm, 1.0 - wp),
    };
    let c0 = init.initial_coefficients();
    let b = init.beta;
    let mut coeffs = [[C64::new(0.0, 0.0); 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            let th = snapshot.phases[m][n];
            let phase = match mode {
                Mode::One => C64::i() * th.theta3 + th.theta4,
                Mode::Two => C64::i() * th.theta1 + th.theta2,
            };
            let expo = q1 * log_overlap(b[n].0, b[m].0) + q2 * log_overlap(b[n].1, b[m].1) + phase;
            coeffs[m][n] = c0[m][n] * expo.exp();
        }
    }
    let labels = match mode {
        Mode::One => [snapshot.labels[0].0, snapshot.labels[1].0],
        Mode::Two => [snapshot.labels[0].1, snapshot.labels[1].1],
    };
    Ok(ReducedStateSnapshot {
        t: snapshot.t,
        mode,
        labels,
        coeffs,
    })
}
