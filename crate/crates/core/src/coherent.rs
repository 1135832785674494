//! Coherent-state overlaps in closed form.

use num_complex::Complex64 as C64;

/// log <a|b> = -|a|^2/2 - |b|^2/2 + conj(a) b, with no branch cut.
#[inline]
pub fn log_overlap(a: C64, b: C64) -> C64 {
    -0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b
}

#[inline]
pub fn overlap(a: C64, b: C64) -> C64 {
    log_overlap(a, b).exp()
}

/// <a1,a2|b1,b2> for product coherent states.
#[inline]
pub fn overlap2(a: (C64, C64), b: (C64, C64)) -> C64 {
    (log_overlap(a.0, b.0) + log_overlap(a.1, b.1)).exp()
}

/// Fock amplitudes e^{-|b|^2/2} b^n / sqrt(n!) for n < n_max.
pub fn fock_amplitudes(beta: C64, n_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max);
    let mut c = C64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    for n in 0..n_max {
        out.push(c);
        c = c * beta / ((n + 1) as f64).sqrt();
    }
    out
}

/// Probability weight of a coherent state lying outside levels 0..n.
pub fn tail_weight(amplitude: f64, n: usize) -> f64 {
    let x = amplitude * amplitude;
    let mut term = (-x).exp();
    let mut inside = 0.0;
    for k in 0..n {
        inside += term;
        term *= x / (k + 1) as f64;
    }
    (1.0 - inside).max(0.0)
}
