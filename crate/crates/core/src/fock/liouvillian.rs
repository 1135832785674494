use num_complex::Complex64 as C64;

use super::csr::CsrMatrix;
use crate::error::{Error, Result};
use crate::params::{DampingRates, DerivedCoefficients, Regime, SystemConfig};

/// Sparse single-mode-pair operator as (row, col, value) entries.
#[derive(Debug, Clone)]
pub(crate) struct Op {
    pub entries: Vec<(usize, usize, C64)>,
}

impl Op {
    fn annihilation(mode: usize, n1: usize, n2: usize) -> Op {
        let mut entries = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                let (src, val) = if mode == 0 { (a, a) } else { (b, b) };
                if src == 0 {
                    continue;
                }
                let from = a * n2 + b;
                let to = if mode == 0 {
                    (a - 1) * n2 + b
                } else {
                    a * n2 + b - 1
                };
                entries.push((to, from, C64::new((val as f64).sqrt(), 0.0)));
            }
        }
        Op { entries }
    }

    fn dag(&self) -> Op {
        Op {
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (c, r, v.conj()))
                .collect(),
        }
    }

    fn identity(d: usize) -> Op {
        Op {
            entries: (0..d).map(|i| (i, i, C64::new(1.0, 0.0))).collect(),
        }
    }

    fn mul(&self, other: &Op, d: usize) -> Op {
        let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); d];
        for &(r, c, v) in &other.entries {
            rows[r].push((c, v));
        }
        let mut t = Vec::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &rows[k] {
                t.push((r, c, v * w));
            }
        }
        let m = CsrMatrix::from_triplets(d, t);
        let mut entries = Vec::with_capacity(m.nnz());
        for r in 0..d {
            for (c, v) in m.row(r) {
                entries.push((r, c, v));
            }
        }
        Op { entries }
    }

    fn scaled(&self, s: C64) -> Op {
        Op {
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (r, c, v * s))
                .collect(),
        }
    }

    fn plus(&self, other: &Op) -> Op {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Op { entries }
    }
}

pub(crate) struct Ladder {
    pub a: [Op; 2],
    pub d: usize,
}

impl Ladder {
    pub fn new(n1: usize, n2: usize) -> Ladder {
        Ladder {
            a: [Op::annihilation(0, n1, n2), Op::annihilation(1, n1, n2)],
            d: n1 * n2,
        }
    }
}

/// Accumulates coef * A rho B, with rho vectorised row-major:
/// vec(rho)[i*D + j] = rho_ij, so entry ((i,j),(k,l)) gains coef A_ik B_lj.
struct Builder {
    d: usize,
    triplets: Vec<(usize, usize, C64)>,
}

impl Builder {
    fn sandwich(&mut self, coef: C64, a: &Op, b: &Op) {
        if coef == C64::new(0.0, 0.0) {
            return;
        }
        let d = self.d;
        for &(i, k, va) in &a.entries {
            for &(l, j, vb) in &b.entries {
                self.triplets.push((i * d + j, k * d + l, coef * va * vb));
            }
        }
    }

    /// coef * (2 L rho R^dag - R^dag L rho - rho R^dag L).
    fn dissipator(&mut self, coef: f64, l: &Op, r: &Op) {
        let id = Op::identity(self.d);
        let rd = r.dag();
        let rdl = rd.mul(l, self.d);
        self.sandwich(C64::new(2.0 * coef, 0.0), l, &rd);
        self.sandwich(C64::new(-coef, 0.0), &rdl, &id);
        self.sandwich(C64::new(-coef, 0.0), &id, &rdl);
    }

    /// coef * [rho, X] with X = a - a^dag.
    fn drive_commutator(&mut self, coef: f64, a: &Op) {
        if coef == 0.0 {
            return;
        }
        let id = Op::identity(self.d);
        let x = a.plus(&a.dag().scaled(C64::new(-1.0, 0.0)));
        self.sandwich(C64::new(coef, 0.0), &id, &x);
        self.sandwich(C64::new(-coef, 0.0), &x, &id);
    }
}

/// Which pieces of the master equation enter the superoperator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermSet {
    pub hamiltonian: bool,
    pub dissipators: bool,
    pub cross_decay: bool,
    pub drive_correction: bool,
}

impl TermSet {
    pub const ALL: TermSet = TermSet {
        hamiltonian: true,
        dissipators: true,
        cross_decay: true,
        drive_correction: true,
    };
}

#[derive(Debug, Clone)]
pub struct Liouvillian {
    pub dims: (usize, usize),
    pub regime: Regime,
    pub terms: TermSet,
    pub matrix: CsrMatrix,
}

impl Liouvillian {
    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// Largest |sum_i L_{(i,i),c}| over columns c; zero when trace is preserved.
    pub fn trace_residual(&self) -> f64 {
        let d = self.dim();
        let mut acc = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for (c, v) in self.matrix.row(i * d + i) {
                acc[c] += v;
            }
        }
        acc.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Superoperator of the zero-temperature master equation in the rotating
/// frame, with the Hamiltonian
/// H = Omega (n1 + n2) + lambda (a1^dag a2 + a2^dag a1) + F (a2^dag + a2).
///
/// The strong regime damps each mode at (gamma+ + gamma-)/2 and adds the
/// cross-decay channel at (gamma+ - gamma-)/2. The weak regime damps each
/// mode at Gamma/2 with no cross channel. The drive commutator is included
/// only when F != 0.
pub fn build_liouvillian(
    config: &SystemConfig,
    rates: &DampingRates,
    coeffs: &DerivedCoefficients,
    regime: Regime,
    truncation: (usize, usize),
) -> Result<Liouvillian> {
    build_liouvillian_with(config, rates, coeffs, regime, truncation, TermSet::ALL)
}

pub fn build_liouvillian_with(
    config: &SystemConfig,
    rates: &DampingRates,
    coeffs: &DerivedCoefficients,
    regime: Regime,
    truncation: (usize, usize),
    terms: TermSet,
) -> Result<Liouvillian> {
    let (n1, n2) = truncation;
    if n1 < 2 || n2 < 2 {
        return Err(Error::InvalidParameter {
            name: "truncation",
            reason: format!("need N >= 2, got ({n1}, {n2})"),
        });
    }
    let lad = Ladder::new(n1, n2);
    let d = lad.d;
    let mut b = Builder {
        d,
        triplets: Vec::new(),
    };
    let id = Op::identity(d);
    let a = &lad.a;

    if terms.hamiltonian {
        let om = C64::new(coeffs.big_omega, 0.0);
        let lam = C64::new(config.lambda, 0.0);
        let f = C64::new(config.drive_amplitude, 0.0);
        let ad = [a[0].dag(), a[1].dag()];
        let h = ad[0]
            .mul(&a[0], d)
            .scaled(om)
            .plus(&ad[1].mul(&a[1], d).scaled(om))
            .plus(&ad[0].mul(&a[1], d).scaled(lam))
            .plus(&ad[1].mul(&a[0], d).scaled(lam))
            .plus(&ad[1].plus(&a[1]).scaled(f));
        // i [rho, H]
        b.sandwich(C64::new(0.0, 1.0), &id, &h);
        b.sandwich(C64::new(0.0, -1.0), &h, &id);
    }

    let f = config.drive_amplitude;
    for l in 0..2 {
        let m = 1 - l;
        match regime {
            Regime::Strong => {
                if terms.dissipators {
                    b.dissipator(
                        0.5 * (rates.gamma_plus[l] + rates.gamma_minus[l]),
                        &a[l],
                        &a[l],
                    );
                }
                if terms.cross_decay {
                    // kappa (a_m rho a_l^dag - a_l^dag a_m rho + a_l rho a_m^dag - rho a_m^dag a_l)
                    let k = 0.5 * (rates.gamma_plus[l] - rates.gamma_minus[l]);
                    if k != 0.0 {
                        let kc = C64::new(k, 0.0);
                        let (ald, amd) = (a[l].dag(), a[m].dag());
                        b.sandwich(kc, &a[m], &ald);
                        b.sandwich(-kc, &ald.mul(&a[m], d), &id);
                        b.sandwich(kc, &a[l], &amd);
                        b.sandwich(-kc, &id, &amd.mul(&a[l], d));
                    }
                }
                if terms.drive_correction && f != 0.0 {
                    b.drive_commutator(coeffs.drive_correction[l], &a[l]);
                }
            }
            Regime::Weak => {
                let gamma = config.gamma_scale[l];
                if terms.dissipators {
                    b.dissipator(0.5 * gamma, &a[l], &a[l]);
                }
                if terms.drive_correction && f != 0.0 {
                    let (om, lam) = (coeffs.big_omega, config.lambda);
                    let w = if l == 1 { om } else { -lam };
                    let c = f / (om * om - lam * lam) * w * (rates.gamma_at_drive[l] - gamma / 2.0);
                    b.drive_commutator(c, &a[l]);
                }
            }
        }
    }

    Ok(Liouvillian {
        dims: truncation,
        regime,
        terms,
        matrix: CsrMatrix::from_triplets(d * d, b.triplets),
    })
}
