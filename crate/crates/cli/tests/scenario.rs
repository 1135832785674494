use oscnet::observables::StateKind;
use oscnet::{Regime, Sign, SpectralModel, C64};
use oscnet_cli::builtins::{builtin, NAMES};
use oscnet_cli::scenario::Observable;
use oscnet_cli::{parse_scenario, CliError};

#[test]
fn every_builtin_is_valid() {
    for name in NAMES {
        let s = builtin(name).unwrap();
        s.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(s.figure.starts_with("Fig. "));
        assert!(!s.observables.is_empty());
    }
}

#[test]
fn full_file_round_trip() {
    let src = r#"
name = "full"
figure = "custom panel"
notes = ["first"]
omega10 = 1.0
omega20 = 0.9
lambda = 0.5
gamma1 = 0.01
gamma2 = 0.02
regime = "weak"
observables = ["recurrence", "entropy_joint", "find_cat_mode2"]
[spectral1]
model = "lorentzian"
eps_plus = 0.3
eps_minus = 0.1
[spectral2]
model = "wide_lorentzian"
eps_minus = 0.2
[initial]
alpha = [0.5, 0.25]
eta = 0.75
sign = "-"
[grid]
t_max_lambda = 10
samples = 11
"#;
    let s = parse_scenario(src, "full.toml").unwrap();
    assert_eq!(s.name, "full");
    assert_eq!(s.notes, vec!["first".to_string()]);
    assert_eq!(s.config.regime, Regime::Weak);
    assert_eq!(s.config.spectral[0], SpectralModel::Lorentzian { eps_plus: 0.3, eps_minus: 0.1 });
    assert_eq!(s.config.spectral[1], SpectralModel::WideLorentzian { eps_minus: 0.2 });
    assert_eq!(s.initial.alpha, C64::new(0.5, 0.25));
    assert_eq!(s.initial.sign, Sign::Minus);
    assert_eq!(s.initial.kind, StateKind::ProductCat);
    assert_eq!(s.observables, vec![Observable::Recurrence, Observable::EntropyJoint, Observable::FindCatMode2]);
    assert_eq!((s.grid.t_max_lambda, s.grid.samples), (10.0, 11));
}

#[test]
fn defaults() {
    let s = parse_scenario("lambda = 1\nobservables = [\"swap\"]\n[initial]\nalpha = 1\n", "dir/min.toml").unwrap();
    assert_eq!(s.figure, "custom");
    assert_eq!(s.config.spectral, [SpectralModel::MarkovianWhite; 2]);
    assert_eq!(s.config.regime, Regime::Strong);
    assert_eq!(s.grid.samples, 2001);
    assert!(!s.oracle.enabled);
}

#[test]
fn product_observables_need_product_state() {
    let src = "lambda = 1\nobservables = [\"swap\", \"find_cat_mode1\"]\n[initial]\nkind = \"eigen_minus\"\nalpha = 1\n";
    let err = parse_scenario(src, "eig.toml").unwrap_err();
    assert!(matches!(err, CliError::Config { line: Some(2), .. }), "{err}");
}

#[test]
fn every_observable_name_parses() {
    for o in Observable::ALL {
        assert_eq!(o.to_string().parse::<Observable>(), Ok(o));
    }
}

#[test]
fn empty_observables_rejected() {
    let err = parse_scenario("lambda = 1\nobservables = []\n[initial]\nalpha = 1\n", "e.toml").unwrap_err();
    assert!(err.to_string().starts_with("e.toml:2:"), "{err}");
}

#[test]
fn malformed_toml_points_at_line() {
    let err = parse_scenario("lambda = 1\nobservables = [\n[initial]\n", "broken.toml").unwrap_err();
    match err {
        CliError::Config { origin, line, .. } => {
            assert_eq!(origin, "broken.toml");
            assert!(line.is_some());
        }
        other => panic!("{other}"),
    }
}
