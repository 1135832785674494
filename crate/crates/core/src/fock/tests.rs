use std::f64::consts::PI;

use super::*;
use crate::closed_form::{evolve_joint_state, evolve_labels, Sign};
use crate::params::{
    resolve, DampingRates, DerivedCoefficients, Regime, SpectralModel, SystemConfig,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn setup(cfg: &SystemConfig) -> (DampingRates, DerivedCoefficients) {
    resolve(cfg).unwrap()
}

fn markovian(lambda: f64, gamma: f64) -> SystemConfig {
    SystemConfig::identical(1.0, lambda, gamma, SpectralModel::MarkovianWhite)
}

fn driven() -> SystemConfig {
    let mut cfg = markovian(0.3, 0.02);
    cfg.omega20 = 0.9;
    cfg.drive_amplitude = cfg.required_drive();
    cfg.drive_frequency = 0.05;
    cfg.gamma_at_drive = [Some(0.002), Some(0.017)];
    cfg
}

#[test]
fn vectorisation_round_trip() {
    let mut r = FockDensityMatrix::zeros(2, 3);
    for i in 0..6 {
        for j in 0..6 {
            r.data[(i, j)] = c(i as f64, j as f64);
        }
    }
    let v = r.to_vec();
    assert_eq!(v[1 * 6 + 4], c(1.0, 4.0));
    assert_eq!(FockDensityMatrix::from_vec(2, 3, &v).unwrap(), r);
    assert!(FockDensityMatrix::from_vec(2, 2, &v).is_err());
}

#[test]
fn dump_round_trip() {
    let init = InitialSuperposition::cat_coherent(c(0.5, 0.1), c(-0.3, 0.2), Sign::Minus).unwrap();
    let r = coherent_superposition_to_fock(&init, (9, 10)).unwrap();
    let mut buf = Vec::new();
    write_rho(&mut buf, &r, 1.25).unwrap();
    assert_eq!(buf.len(), 24 + 16 * 90 * 90);
    assert_eq!(&buf[0..5], b"RHO1L");
    let (back, t) = read_rho(&mut buf.as_slice()).unwrap();
    assert_eq!(t, 1.25);
    assert_eq!(back, r);
    buf[0] = b'X';
    assert!(matches!(
        read_rho(&mut buf.as_slice()),
        Err(Error::Format(_))
    ));
}

#[test]
fn lossless_liouvillian_is_anti_hermitian() {
    let cfg = markovian(0.7, 0.0);
    let (r, d) = setup(&cfg);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, (4, 3)).unwrap();
    let mut neg = l.matrix.adjoint();
    for v in &mut neg.values {
        *v = -*v;
    }
    assert!(l.matrix.max_abs_diff(&neg) < 1e-10);
}

#[test]
fn strong_reduces_to_weak() {
    for mut cfg in [markovian(1.0, 0.05), driven()] {
        cfg.gamma_scale = [0.02, 0.01];
        let (mut r, _) = setup(&cfg);
        r.gamma_plus = [0.01, 0.005];
        r.gamma_minus = [0.01, 0.005];
        let d = crate::params::derive_coefficients(&cfg, &r).unwrap();
        let strong = build_liouvillian(&cfg, &r, &d, Regime::Strong, (5, 4)).unwrap();
        let weak = build_liouvillian(&cfg, &r, &d, Regime::Weak, (5, 4)).unwrap();
        assert!(strong.matrix.max_abs_diff(&weak.matrix) < 1e-12);
    }
}

#[test]
fn cross_block_follows_rate_difference() {
    let cfg = markovian(1.0, 0.05);
    let (r, d) = setup(&cfg);
    let all = build_liouvillian(&cfg, &r, &d, Regime::Strong, (4, 4)).unwrap();
    let no_cross = TermSet {
        cross_decay: false,
        ..TermSet::ALL
    };
    let without = build_liouvillian_with(&cfg, &r, &d, Regime::Strong, (4, 4), no_cross).unwrap();
    assert!(all.matrix.max_abs_diff(&without.matrix) > 1e-3);

    let eq = SystemConfig::identical(
        1.0,
        1.0,
        0.05,
        SpectralModel::Lorentzian {
            eps_plus: 0.3,
            eps_minus: 0.3,
        },
    );
    let (r, d) = setup(&eq);
    let all = build_liouvillian(&eq, &r, &d, Regime::Strong, (4, 4)).unwrap();
    let without = build_liouvillian_with(&eq, &r, &d, Regime::Strong, (4, 4), no_cross).unwrap();
    assert_eq!(all.matrix.max_abs_diff(&without.matrix), 0.0);
}

#[test]
fn trace_functional_vanishes() {
    let cfg = driven();
    let (r, d) = setup(&cfg);
    for regime in [Regime::Strong, Regime::Weak] {
        let l = build_liouvillian(&cfg, &r, &d, regime, (5, 6)).unwrap();
        assert!(l.trace_residual() < 1e-12, "{}", l.trace_residual());
    }
}

#[test]
fn vacuum_dyad() {
    let init = InitialSuperposition::new(
        (c(0.0, 0.0), c(0.0, 0.0)),
        (c(0.0, 0.0), c(0.0, 0.0)),
        Sign::Plus,
    )
    .unwrap();
    let r = coherent_superposition_to_fock(&init, (5, 5)).unwrap();
    assert_eq!(r.trace(), c(1.0, 0.0));
    assert_eq!(r.data[(0, 0)], c(1.0, 0.0));
}

#[test]
fn small_cat_trace() {
    let init = InitialSuperposition::cat_coherent(c(0.5, 0.0), c(0.5, 0.0), Sign::Plus).unwrap();
    let r = coherent_superposition_to_fock(&init, (12, 12)).unwrap();
    assert!((r.trace() - 1.0).norm() < 1e-10);
}

#[test]
fn odd_cat_parity() {
    let init = InitialSuperposition::cat_coherent(c(0.5, 0.0), c(0.0, 0.0), Sign::Minus).unwrap();
    let r = coherent_superposition_to_fock(&init, (12, 12)).unwrap();
    let r1 = r.partial_trace(0);
    for n in (0..12).step_by(2) {
        assert!(r1[(n, n)].norm() < 1e-16);
    }
}

#[test]
fn truncation_guard() {
    let init = InitialSuperposition::cat_coherent(c(1.0, 0.0), c(1.0, 0.0), Sign::Plus).unwrap();
    match coherent_superposition_to_fock(&init, (3, 3)) {
        Err(Error::Truncation { minimum, .. }) => assert_eq!(minimum, 15),
        other => panic!("{other:?}"),
    }
}

#[test]
fn step_guard() {
    let cfg = markovian(1.0, 0.05);
    let (r, d) = setup(&cfg);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, (4, 4)).unwrap();
    let rho = FockDensityMatrix {
        data: DMatrix::identity(16, 16) / C64::new(16.0, 0.0),
        ..FockDensityMatrix::zeros(4, 4)
    };
    let opts = IntegrateOptions::new(1.0).with_dt(0.06);
    assert!(matches!(
        integrate(&l, &rho, &[1.0], opts),
        Err(Error::StepSize { .. })
    ));
    assert!(matches!(
        integrate(&l, &rho, &[1.0, 0.5], IntegrateOptions::new(1.0)),
        Err(Error::BadGrid)
    ));
}

#[test]
fn unitary_matches_closed_form() {
    let mut cfg = markovian(1.0, 0.0);
    cfg.drive_frequency = cfg.dressed_frequencies()[0];
    let (r, d) = setup(&cfg);
    let init = InitialSuperposition::cat_coherent(c(0.6, 0.0), c(0.4, 0.2), Sign::Plus).unwrap();
    let dims = (18, 18);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, dims).unwrap();
    let rho0 = coherent_superposition_to_fock(&init, dims).unwrap();
    let t = 2.0 * PI;
    let out = integrate(&l, &rho0, &[t], IntegrateOptions::new(1.0).with_dt(1e-3)).unwrap();
    let s = evolve_joint_state(&init, &d, t).unwrap();
    let cmp = compare(&out[0], &s).unwrap();
    assert!(cmp.fidelity >= 1.0 - 1e-8, "{cmp:?}");
    assert!(cmp.trace_distance < 1e-8, "{cmp:?}");
}

#[test]
fn dissipative_run_invariants() {
    let cfg = markovian(1.0, 0.05);
    let (r, d) = setup(&cfg);
    let init = InitialSuperposition::cat_coherent(c(0.8, 0.0), c(0.8, 0.0), Sign::Plus).unwrap();
    let dims = (16, 16);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, dims).unwrap();
    let rho0 = coherent_superposition_to_fock(&init, dims).unwrap();
    let tr0 = rho0.trace();
    let grid: Vec<f64> = (1..=8).map(|k| k as f64 * PI / 2.0).collect();
    let out = integrate(&l, &rho0, &grid, IntegrateOptions::new(1.0).with_dt(2.5e-3)).unwrap();
    for (t, rho) in grid.iter().zip(&out) {
        assert!((rho.trace() - tr0).norm() < 1e-6);
        assert!(rho.hermiticity_error() < 1e-10);
        assert!(rho.min_eigenvalue() > -1e-6, "{}", rho.min_eigenvalue());
        let s = evolve_joint_state(&init, &d, *t).unwrap();
        let cmp = compare(rho, &s).unwrap();
        assert!(cmp.trace_distance <= 1e-3, "t={t} {cmp:?}");
        assert!((cmp.offdiag_ratio - 1.0).abs() <= 1e-3, "t={t} {cmp:?}");
    }
}

#[test]
fn halved_step_converges() {
    let cfg = markovian(1.0, 0.05);
    let (r, d) = setup(&cfg);
    let init = InitialSuperposition::cat_coherent(c(0.7, 0.0), c(0.5, 0.0), Sign::Minus).unwrap();
    let dims = (12, 12);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, dims).unwrap();
    let rho0 = coherent_superposition_to_fock(&init, dims).unwrap();
    let a = integrate(&l, &rho0, &[PI], IntegrateOptions::new(1.0)).unwrap();
    let b = integrate(&l, &rho0, &[PI], IntegrateOptions::new(1.0).with_dt(0.005)).unwrap();
    assert!(trace_distance(&a[0].data, &b[0].data) < 1e-6);
}

#[test]
fn linearity() {
    let cfg = driven();
    let (r, d) = setup(&cfg);
    let dims = (8, 8);
    let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, dims).unwrap();
    let s1 = InitialSuperposition::cat_coherent(c(0.4, 0.0), c(0.2, 0.0), Sign::Plus).unwrap();
    let s2 = InitialSuperposition::eigen_plus(c(0.3, 0.1), Sign::Minus).unwrap();
    let r1 = coherent_superposition_to_fock(&s1, dims).unwrap();
    let r2 = coherent_superposition_to_fock(&s2, dims).unwrap();
    let (a, b) = (0.3, 0.7);
    let mix = FockDensityMatrix {
        data: &r1.data * C64::new(a, 0.0) + &r2.data * C64::new(b, 0.0),
        ..r1.clone()
    };
    let opts = IntegrateOptions::new(cfg.lambda);
    let grid = [1.0, 2.5];
    let o1 = integrate(&l, &r1, &grid, opts).unwrap();
    let o2 = integrate(&l, &r2, &grid, opts).unwrap();
    let om = integrate(&l, &mix, &grid, opts).unwrap();
    for k in 0..grid.len() {
        let lin = &o1[k].data * C64::new(a, 0.0) + &o2[k].data * C64::new(b, 0.0);
        assert!(
            (&om[k].data - lin)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max)
                < 1e-12
        );
    }
}

#[test]
fn mean_field_follows_labels() {
    for cfg in [markovian(1.0, 0.05), driven()] {
        let (r, d) = setup(&cfg);
        let (b1, b2) = (c(0.5, 0.2), c(-0.3, 0.4));
        let init = InitialSuperposition::new((b1, b2), (b1, b2), Sign::Plus).unwrap();
        let dims = (10, 10);
        let l = build_liouvillian(&cfg, &r, &d, Regime::Strong, dims).unwrap();
        let rho0 = coherent_superposition_to_fock(&init, dims).unwrap();
        let grid: Vec<f64> = (1..=16)
            .map(|k| k as f64 * 4.0 * PI / (16.0 * cfg.lambda))
            .collect();
        let out = integrate(&l, &rho0, &grid, IntegrateOptions::new(cfg.lambda)).unwrap();
        for (t, rho) in grid.iter().zip(&out) {
            let (s, z) = evolve_labels(&d, b1, b2, *t).unwrap();
            assert!((rho.expect_annihilation(0) - s).norm() < 1e-4, "t={t}");
            assert!((rho.expect_annihilation(1) - z).norm() < 1e-4, "t={t}");
        }
    }
}

#[test]
fn comparison_trivial_cases() {
    let cfg = markovian(1.0, 0.05);
    let (_, d) = setup(&cfg);
    let init = InitialSuperposition::cat_coherent(c(0.8, 0.0), c(0.8, 0.0), Sign::Plus).unwrap();
    let dims = (14, 14);
    let rho0 = coherent_superposition_to_fock(&init, dims).unwrap();
    let s0 = evolve_joint_state(&init, &d, 0.0).unwrap();
    let cmp = compare(&rho0, &s0).unwrap();
    assert!(cmp.trace_distance < 1e-9);
    assert!((cmp.fidelity - 1.0).abs() < 1e-6, "{cmp:?}");
    assert!((cmp.offdiag_ratio - 1.0).abs() < 1e-9);
    assert_eq!(trace_distance(&rho0.data, &rho0.data), 0.0);
}
