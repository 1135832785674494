use oscnet_wasm::{coherence_table, entropy_table, recurrence_swap_table, MAX_SAMPLES};

#[test]
fn lossless_swap_reaches_full_exchange() {
    let t = recurrence_swap_table(0.02, 0.0, 1.0, true, std::f64::consts::PI, 4001).unwrap();
    assert_eq!(t.rows(), 4001);
    assert!((t.row(0)[1] - 1.0).abs() < 1e-12);
    assert!(t.row(0)[2] < 0.5);
    let best = (0..t.rows()).map(|k| t.row(k)[2]).fold(0.0, f64::max);
    assert!(best > 0.99, "{best}");
    assert!((0..t.rows()).all(|k| t.row(k)[1..].iter().all(|p| (-1e-12..=1.0 + 1e-12).contains(p))));
}

#[test]
fn coherence_columns_start_at_one_and_decay() {
    let t = coherence_table(2.0, 0.4, 0.4, 1.0, 30.0, 301).unwrap();
    assert_eq!(t.columns, 5);
    let r = t.row(0);
    assert!([r[1], r[2], r[4]].iter().all(|&v| (v - 1.0).abs() < 1e-12), "{r:?}");
    // the coherence starts in mode 1
    assert!((r[3] - (-2.0f64).exp()).abs() < 1e-12);
    let last = t.row(300);
    assert!(last[1..].iter().all(|&v| (0.0..0.2).contains(&v)), "{last:?}");
}

#[test]
fn entropies_start_pure_and_respect_subadditivity() {
    let t = entropy_table(2.0, 0.1, 1.0, 16.0, 161).unwrap();
    assert!(t.row(0)[1..4].iter().all(|s| s.abs() < 1e-12));
    for k in 0..t.rows() {
        let r = t.row(k);
        assert!(r[1..4].iter().all(|&s| (-1e-12..1.0).contains(&s)), "{r:?}");
        assert!((r[4] - (r[2] + r[3] - r[1])).abs() < 1e-12);
    }
}

#[test]
fn rejects_bad_grids() {
    assert!(entropy_table(2.0, 0.1, 1.0, 16.0, 1).is_err());
    assert!(entropy_table(2.0, 0.1, 1.0, 16.0, MAX_SAMPLES + 1).is_err());
    assert!(coherence_table(2.0, 0.1, 0.1, 1.0, -1.0, 10).is_err());
    assert!(recurrence_swap_table(-1.0, 0.0, 1.0, false, 1.0, 10).is_err());
}
