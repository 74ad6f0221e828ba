use lrkitaev::analysis::{format_sig17, write_sweep_csv};
use lrkitaev::{
    build_correlation_matrix, fit_log_plus_subleading, renyi_entropy, sweep, ChainParams, Couplings, Error,
    FitOptions, GridPoint, Populations, SweepTask,
};

#[test]
fn single_precision_instantiation_tracks_double() {
    let p32 = ChainParams::<f32>::new(64, 1.5, 1.5, 0.5, false).unwrap();
    let p64 = ChainParams::<f64>::new(64, 1.5, 1.5, 0.5, false).unwrap();
    let s32 = renyi_entropy(&build_correlation_matrix(&p32, 16, &Populations::vacuum()).unwrap(), 2.0).unwrap();
    let s64 = renyi_entropy(&build_correlation_matrix(&p64, 16, &Populations::vacuum()).unwrap(), 2.0).unwrap();
    assert!((s32.value as f64 - s64.value).abs() < 1e-4);
}

#[test]
fn critical_entropy_fit_is_robust_to_dropping_the_largest_size() {
    let grid = [32usize, 48, 64, 96, 128, 192, 256, 384];
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .map(|&l| {
            let base = ChainParams::new(2 * l, 1.8, 1.5, 0.0, false).unwrap();
            let p = base.with_h(Couplings::new(&base).unwrap().t_zero().unwrap());
            let modes = Couplings::new(&p).unwrap().modes().unwrap();
            let pops = Populations::fill_gapless(&modes, 0.0).unwrap();
            let corr = build_correlation_matrix(&p, l, &pops).unwrap();
            (l as f64, renyi_entropy(&corr, 1.0).unwrap().value)
        })
        .collect();
    let full = fit_log_plus_subleading(&pts, None, &FitOptions::default()).unwrap();
    let trimmed = fit_log_plus_subleading(&pts[..pts.len() - 1], None, &FitOptions::default()).unwrap();
    assert!((full.log_coef - 1.0 / 6.0).abs() < 0.01, "{}", full.log_coef);
    assert!((full.log_coef - trimmed.log_coef).abs() < full.uncertainty_proxy().max(1e-3));
}

#[test]
fn sweep_tables_are_byte_identical_across_runs() {
    let grid: Vec<GridPoint<f64>> = (0..12)
        .map(|i| GridPoint {
            n_sites: 48,
            alpha1: 1.5,
            alpha2: 1.5,
            h: -1.0 + 0.25 * i as f64,
            l: 12,
            nu: 2.0,
            thermodynamic: false,
        })
        .collect();
    let render = || {
        let mut buf = Vec::new();
        write_sweep_csv(&sweep(&grid, SweepTask::Entropy), SweepTask::Entropy, &mut buf).unwrap();
        buf
    };
    let first = render();
    assert_eq!(first, render());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("n_sites,alpha1,alpha2,h,L,nu,S,status\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn phase_sweep_flags_critical_rows() {
    let base = ChainParams::new(32, 2.0, 2.0, 0.0, false).unwrap();
    let h0 = Couplings::new(&base).unwrap().t_zero().unwrap();
    let grid: Vec<GridPoint<f64>> = [0.5, h0, 1.5]
        .iter()
        .map(|&h| GridPoint { n_sites: 32, alpha1: 2.0, alpha2: 2.0, h, l: 1, nu: 2.0, thermodynamic: false })
        .collect();
    let rows = sweep(&grid, SweepTask::Phase);
    assert_eq!(rows[0].outcome.as_ref().unwrap()[0], 1.0);
    assert!(matches!(rows[1].outcome, Err(Error::Gapless(_)) | Err(Error::Critical(_))));
    assert_eq!(rows[2].outcome.as_ref().unwrap()[0], 0.0);
    assert_eq!(format_sig17(1.0_f64), "1.0000000000000000e0");
}
