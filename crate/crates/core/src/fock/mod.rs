//! Brute-force integration of the master equation in a truncated two-mode
//! Fock basis, used as an independent check of the closed form.
//!
//! Basis index of |n1, n2> is n1 * N2 + n2. Density matrices are vectorised
//! row-major.

mod csr;
mod dump;
mod liouvillian;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub use csr::CsrMatrix;
pub use dump::{read_rho, write_rho};
pub use liouvillian::{build_liouvillian, build_liouvillian_with, Liouvillian, TermSet};

use crate::closed_form::{InitialSuperposition, JointStateSnapshot};
use crate::coherent::fock_amplitudes;
use crate::error::{Error, Result};
use crate::params::DerivedCoefficients;

/// Accuracy guard on the RK4 step.
pub const MAX_LAMBDA_DT: f64 = 0.05;
/// Default step, lambda * dt.
pub const DEFAULT_LAMBDA_DT: f64 = 0.01;
/// dt * max row sum must stay inside the RK4 stability region.
pub const MAX_STABILITY: f64 = 2.8;

#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    pub dim1: usize,
    pub dim2: usize,
    pub data: DMatrix<C64>,
}

impl FockDensityMatrix {
    pub fn zeros(dim1: usize, dim2: usize) -> Self {
        let d = dim1 * dim2;
        FockDensityMatrix {
            dim1,
            dim2,
            data: DMatrix::zeros(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim1 * self.dim2
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.dim2 + n2
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    /// Row-major stacking.
    pub fn to_vec(&self) -> Vec<C64> {
        let d = self.dim();
        let mut v = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                v.push(self.data[(i, j)]);
            }
        }
        v
    }

    pub fn from_vec(dim1: usize, dim2: usize, v: &[C64]) -> Result<Self> {
        let d = dim1 * dim2;
        if v.len() != d * d {
            return Err(Error::Dimension {
                expected: d * d,
                got: v.len(),
            });
        }
        Ok(FockDensityMatrix {
            dim1,
            dim2,
            data: DMatrix::from_row_slice(d, d, v),
        })
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.data - self.data.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_part(&self.data)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Tr[op rho] for an operator acting on mode 1 or 2 only.
    pub fn expect_annihilation(&self, mode: usize) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for a in 0..self.dim1 {
            for b in 0..self.dim2 {
                let (src, n) = if mode == 0 { (a, a) } else { (b, b) };
                if src == 0 {
                    continue;
                }
                let from = self.index(a, b);
                let to = if mode == 0 {
                    self.index(a - 1, b)
                } else {
                    self.index(a, b - 1)
                };
                // <to| a |from> rho_{from, to}
                s += (n as f64).sqrt() * self.data[(from, to)];
            }
        }
        s
    }

    /// Reduced density matrix of one mode (0 or 1).
    pub fn partial_trace(&self, keep: usize) -> DMatrix<C64> {
        let (n1, n2) = (self.dim1, self.dim2);
        if keep == 0 {
            DMatrix::from_fn(n1, n1, |i, j| {
                (0..n2).map(|b| self.data[(i * n2 + b, j * n2 + b)]).sum()
            })
        } else {
            DMatrix::from_fn(n2, n2, |i, j| {
                (0..n1).map(|a| self.data[(a * n2 + i, a * n2 + j)]).sum()
            })
        }
    }
}

fn hermitian_part(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Smallest truncation that passes the guard N > 4|b|^2 + 6|b| + 4.
pub fn minimum_truncation(amplitude: f64) -> usize {
    let a = amplitude.abs();
    (4.0 * a * a + 6.0 * a + 4.0).floor() as usize + 1
}

fn check_truncation(amplitude: f64, dims: (usize, usize)) -> Result<()> {
    let minimum = minimum_truncation(amplitude);
    let given = dims.0.min(dims.1);
    if given < minimum {
        return Err(Error::Truncation {
            given,
            minimum,
            amplitude,
        });
    }
    Ok(())
}

fn product_vector(b1: C64, b2: C64, dims: (usize, usize)) -> Vec<C64> {
    let f1 = fock_amplitudes(b1, dims.0);
    let f2 = fock_amplitudes(b2, dims.1);
    let mut v = Vec::with_capacity(dims.0 * dims.1);
    for x in &f1 {
        for y in &f2 {
            v.push(x * y);
        }
    }
    v
}

fn dyads_to_fock(
    labels: &[(C64, C64); 2],
    coeffs: &[[C64; 2]; 2],
    dims: (usize, usize),
) -> FockDensityMatrix {
    let v = [
        product_vector(labels[0].0, labels[0].1, dims),
        product_vector(labels[1].0, labels[1].1, dims),
    ];
    let d = dims.0 * dims.1;
    let data = DMatrix::from_fn(d, d, |i, j| {
        let mut s = C64::new(0.0, 0.0);
        for m in 0..2 {
            for n in 0..2 {
                s += coeffs[m][n] * v[m][i] * v[n][j].conj();
            }
        }
        s
    });
    FockDensityMatrix {
        dim1: dims.0,
        dim2: dims.1,
        data,
    }
}

/// Initial superposition expanded in the truncated basis (not renormalised,
/// so the trace falls short of 1 by the truncated tail).
pub fn coherent_superposition_to_fock(
    init: &InitialSuperposition,
    dims: (usize, usize),
) -> Result<FockDensityMatrix> {
    check_truncation(init.max_amplitude(), dims)?;
    Ok(dyads_to_fock(
        &init.beta,
        &init.initial_coefficients(),
        dims,
    ))
}

pub fn snapshot_to_fock(s: &JointStateSnapshot, dims: (usize, usize)) -> Result<FockDensityMatrix> {
    let amp = s
        .labels
        .iter()
        .flat_map(|u| [u.0.norm(), u.1.norm()])
        .fold(0.0, f64::max);
    check_truncation(amp, dims)?;
    Ok(dyads_to_fock(&s.labels, &s.coeffs, dims))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Step size; defaults to 0.01 / max(lambda, |Omega|).
    pub dt: Option<f64>,
    /// Coupling used for the step guard.
    pub lambda: f64,
    /// |Omega|, the rotating-frame frequency. RK4 drives the near-zero
    /// eigenvalues of rho negative when Omega dt is not small as well.
    pub frame: f64,
    /// Re-symmetrise rho after every step.
    pub symmetrize: bool,
}

impl IntegrateOptions {
    pub fn new(lambda: f64) -> Self {
        IntegrateOptions {
            dt: None,
            lambda,
            frame: 0.0,
            symmetrize: true,
        }
    }

    pub fn for_coefficients(c: &DerivedCoefficients) -> Self {
        IntegrateOptions {
            frame: c.big_omega.abs(),
            ..Self::new(c.lambda)
        }
    }

    pub fn default_dt(&self) -> f64 {
        let scale = self.lambda.max(self.frame);
        if scale > 0.0 {
            DEFAULT_LAMBDA_DT / scale
        } else {
            DEFAULT_LAMBDA_DT
        }
    }

    pub fn with_dt(self, dt: f64) -> Self {
        IntegrateOptions {
            dt: Some(dt),
            ..self
        }
    }
}

fn check_grid(t: &[f64]) -> Result<()> {
    if t.is_empty() || !(t[0] >= 0.0) || t.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::BadGrid);
    }
    Ok(())
}

/// Fixed-step RK4 from t = 0, calling `visit` at every grid time.
pub fn integrate_with(
    l: &Liouvillian,
    rho0: &FockDensityMatrix,
    t_grid: &[f64],
    opts: IntegrateOptions,
    mut visit: impl FnMut(f64, &FockDensityMatrix) -> Result<()>,
) -> Result<()> {
    check_grid(t_grid)?;
    if (rho0.dim1, rho0.dim2) != l.dims {
        return Err(Error::Dimension {
            expected: l.dim(),
            got: rho0.dim(),
        });
    }
    let dt = opts.dt.unwrap_or(opts.default_dt());
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("must be > 0, got {dt}"),
        });
    }
    if opts.lambda * dt > MAX_LAMBDA_DT {
        return Err(Error::StepSize {
            lambda_dt: opts.lambda * dt,
            limit: MAX_LAMBDA_DT,
        });
    }
    let stiff = dt * l.matrix.max_row_sum();
    if stiff > MAX_STABILITY {
        return Err(Error::Unstable {
            value: stiff,
            limit: MAX_STABILITY,
        });
    }

    let d = l.dim();
    let n = d * d;
    let mut y = rho0.to_vec();
    let zero = C64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![zero; n],
        vec![zero; n],
        vec![zero; n],
        vec![zero; n],
        vec![zero; n],
    );
    let mut t = 0.0;
    for &target in t_grid {
        let span = target - t;
        let steps = if span > 0.0 {
            (span / dt - 1e-9).ceil().max(1.0) as usize
        } else {
            0
        };
        let h = if steps > 0 { span / steps as f64 } else { 0.0 };
        for _ in 0..steps {
            l.matrix.matvec(&y, &mut k1);
            axpy(&y, &k1, 0.5 * h, &mut tmp);
            l.matrix.matvec(&tmp, &mut k2);
            axpy(&y, &k2, 0.5 * h, &mut tmp);
            l.matrix.matvec(&tmp, &mut k3);
            axpy(&y, &k3, h, &mut tmp);
            l.matrix.matvec(&tmp, &mut k4);
            for i in 0..n {
                y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            if opts.symmetrize {
                for i in 0..d {
                    for j in i..d {
                        let a = y[i * d + j];
                        let b = y[j * d + i];
                        let s = 0.5 * (a + b.conj());
                        y[i * d + j] = s;
                        y[j * d + i] = s.conj();
                    }
                }
            }
        }
        t = target;
        visit(t, &FockDensityMatrix::from_vec(rho0.dim1, rho0.dim2, &y)?)?;
    }
    Ok(())
}

fn axpy(y: &[C64], k: &[C64], h: f64, out: &mut [C64]) {
    for ((o, a), b) in out.iter_mut().zip(y).zip(k) {
        *o = a + h * b;
    }
}

pub fn integrate(
    l: &Liouvillian,
    rho0: &FockDensityMatrix,
    t_grid: &[f64],
    opts: IntegrateOptions,
) -> Result<Vec<FockDensityMatrix>> {
    let mut out = Vec::with_capacity(t_grid.len());
    integrate_with(l, rho0, t_grid, opts, |_, r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// 1/2 ||a - b||_1.
pub fn trace_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    0.5 * hermitian_part(&(a - b))
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
}

fn psd_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let e = hermitian_part(m).symmetric_eigen();
    let v = &e.eigenvectors;
    let s = DMatrix::from_diagonal(&e.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0)));
    v * s * v.adjoint()
}

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
pub fn fidelity(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let s = psd_sqrt(a);
    let m = &s * b * &s;
    let ev = hermitian_part(&m).symmetric_eigenvalues();
    // roundoff eigenvalues near zero would each add ~sqrt(eps) to the sum
    let floor = ev.amax() * f64::EPSILON * ev.len() as f64;
    let r: f64 = ev.iter().filter(|&&x| x > floor).map(|x| x.sqrt()).sum();
    r * r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub trace_distance: f64,
    pub fidelity: f64,
    /// |X_I,II| / |C_I,II| where X is the oracle state projected onto the
    /// two evolved product states.
    pub offdiag_ratio: f64,
}

pub fn compare(oracle: &FockDensityMatrix, s: &JointStateSnapshot) -> Result<Comparison> {
    let dims = (oracle.dim1, oracle.dim2);
    let cf = snapshot_to_fock(s, dims)?;
    let v0 = product_vector(s.labels[0].0, s.labels[0].1, dims);
    let v1 = product_vector(s.labels[1].0, s.labels[1].1, dims);
    let d = oracle.dim();
    let v = DMatrix::from_fn(d, 2, |i, j| if j == 0 { v0[i] } else { v1[i] });
    let g = v.adjoint() * &v;
    let offdiag_ratio = match g.clone().try_inverse() {
        Some(gi) if g.determinant().norm() > 1e-12 => {
            let x = &gi * v.adjoint() * &oracle.data * &v * &gi;
            let c = s.coeffs[0][1].norm();
            if c > 0.0 {
                x[(0, 1)].norm() / c
            } else {
                f64::NAN
            }
        }
        _ => f64::NAN,
    };
    Ok(Comparison {
        trace_distance: trace_distance(&oracle.data, &cf.data),
        fidelity: fidelity(&oracle.data, &cf.data),
        offdiag_ratio,
    })
}

#[cfg(test)]
mod tests;
