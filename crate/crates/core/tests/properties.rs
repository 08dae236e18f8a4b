//! Cross-module properties and documented examples, checked against
//! independent oracles.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skdv::harness::{run_smoothing_study, ExperimentConfig, Study};
use skdv::initial_data::{make_u0, make_v0, BlowupParams};
use skdv::norms::{holder_seminorm, sobolev_norm};
use skdv::solver::{picard_solve, sup_relative_difference, PicardOptions, SystemParams};
use skdv::{apply_group, Dispersion, Error, Field, Grid1D, Representation};

fn random_field(grid: &Grid1D, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Field::from_fn(grid, |_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn direct_l2(f: &Field) -> f64 {
    let h = f.grid().spacing();
    (h * f.values().iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval_holds_for_random_fields(seed in 0u64..10_000, log_n in 3u32..11, len in 1.0f64..500.0) {
        let grid = Grid1D::new(1 << log_n, len).unwrap();
        let f = random_field(&grid, seed);
        let physical = direct_l2(&f);
        let spectral = f.to_spectral().unwrap();
        assert_eq!(spectral.representation(), Representation::Spectral);
        prop_assert!((spectral.l2_norm() - physical).abs() <= 1e-12 * physical);
    }

    #[test]
    fn transforms_are_linear(seed in 0u64..10_000, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let grid = Grid1D::new(256, 40.0).unwrap();
        let f = random_field(&grid, seed);
        let g = random_field(&grid, seed + 1);
        let (ca, cb) = (Complex64::new(a, 0.5), Complex64::new(b, -1.0));
        let combo = f.scaled(ca).add(&g.scaled(cb)).unwrap().into_spectral();
        let parts = f.to_spectral().unwrap().scaled(ca).add(&g.to_spectral().unwrap().scaled(cb)).unwrap();
        let err = combo.sub(&parts).unwrap().l2_norm();
        prop_assert!(err <= 1e-12 * parts.l2_norm().max(1.0));
    }

    #[test]
    fn groups_commute_with_spatial_translation(seed in 0u64..10_000, shift in 1usize..255, t in -2.0f64..2.0) {
        let grid = Grid1D::new(256, 40.0).unwrap();
        let f = random_field(&grid, seed).into_physical();
        let mut rolled = f.values().to_vec();
        rolled.rotate_left(shift);
        let rolled = Field::physical(&grid, rolled).unwrap();
        for kind in [Dispersion::Schrodinger, Dispersion::FifthOrder] {
            let a = apply_group(kind, &f, t).unwrap().into_physical();
            let mut a_rolled = a.values().to_vec();
            a_rolled.rotate_left(shift);
            let b = apply_group(kind, &rolled, t).unwrap().into_physical();
            let err = Field::physical(&grid, a_rolled).unwrap().sub(&b).unwrap().l2_norm();
            prop_assert!(err <= 1e-12 * f.l2_norm());
        }
    }
}

fn small_smoothing_config(body: &str) -> ExperimentConfig {
    let base = r#"
grid.n_points = 512
grid.box_length = 640.0
time.t_final = 0.5
time.dt = 5e-3
blowup.theta = 0.625
"#;
    ExperimentConfig::from_toml_str(&format!("{base}{body}")).unwrap()
}

#[test]
fn smoothing_study_flags_trivial_pass_without_nonlinearity() {
    let cfg = small_smoothing_config("params.alpha = 0.0\nparams.gamma = 0.0\nparams.epsilon = 0.0\n");
    let report = run_smoothing_study(&cfg).unwrap();
    let v = report.verdict_named("u1_grid_change").unwrap();
    assert!(v.pass);
    assert!(v.note.as_deref().unwrap_or("").contains("vanishes"), "{v:?}");
    // (v^2)_x carries no coupling constant, so only u becomes free.
    let levels = report.metrics["levels"].as_array().unwrap();
    for level in levels {
        assert_eq!(level["u1_norm"].as_f64().unwrap(), 0.0);
        assert!(level["v1_norm"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn mismatched_budget_names_the_violated_inequality() {
    let cfg = small_smoothing_config("budget.beta = 0.62\n");
    let err = cfg.validate(Study::Smoothing).unwrap_err();
    assert!(err.is_configuration());
    match run_smoothing_study(&cfg).unwrap_err() {
        Error::Inadmissible(violations) => {
            assert!(
                violations.iter().any(|v| v.starts_with("1/2 < beta < 5b/2 - 5/8")),
                "{violations:?}"
            );
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn fixed_point_on_first_half_ignores_the_horizon() {
    let grid = Grid1D::new(512, 100.0).unwrap();
    let u0 = Field::from_fn(&grid, |x| Complex64::from_polar((-(x / 3.0).powi(2)).exp(), 0.3 * x));
    let v0 = Field::from_real_fn(&grid, |x| 0.4 * (-(x / 4.0).powi(2)).exp());
    let params = SystemParams::new(1.0, 1.0, 1.0).unwrap();
    let opts = PicardOptions::default();
    let short = picard_solve(&u0, &v0, &params, 0.04, 1e-4, &opts).unwrap();
    let long = picard_solve(&u0, &v0, &params, 0.06, 1e-4, &opts).unwrap();
    let diff = sup_relative_difference(&short.trajectory.restricted(0.02), &long.trajectory.restricted(0.02)).unwrap();
    assert!(diff < 1e-11, "diff = {diff:e}");
}

#[test]
fn lipschitz_kink_has_bounded_half_holder_seminorm() {
    let mut values = Vec::new();
    for n in [2048, 4096, 8192] {
        let grid = Grid1D::new(n, 64.0).unwrap();
        let kink = Field::from_real_fn(&grid, |x| (-2.0 * x.abs()).exp());
        values.push(holder_seminorm(&kink, 0, 0.5, n / 8).unwrap());
    }
    for w in values.windows(2) {
        assert!((w[1] / w[0] - 1.0).abs() < 0.05, "{values:?}");
    }
}

#[test]
fn single_term_kink_quotient_diverges_at_focus() {
    let params = BlowupParams {
        theta: 0.625,
        series_length: 1,
        ..Default::default()
    };
    let mut quotients = Vec::new();
    for n in [2048, 4096, 8192] {
        let grid = Grid1D::new(n, 100.0).unwrap();
        let v0 = make_v0(&params, &grid).unwrap();
        let focused = apply_group(Dispersion::FifthOrder, &v0, params.t_star()).unwrap();
        quotients.push(holder_seminorm(&focused, 1, 1.0, n / 8).unwrap());
    }
    for w in quotients.windows(2) {
        assert!(w[1] / w[0] >= 2.0, "{quotients:?}");
    }
}

#[test]
fn u0_low_sobolev_norm_is_grid_converged() {
    let params = BlowupParams {
        theta: 0.625,
        ..Default::default()
    };
    let norms: Vec<(f64, f64)> = [2048, 4096]
        .iter()
        .map(|&n| {
            let u0 = make_u0(&params, &Grid1D::new(n, 640.0).unwrap()).unwrap();
            (sobolev_norm(&u0, 1.9), sobolev_norm(&u0, 2.1))
        })
        .collect();
    let low = (norms[1].0 - norms[0].0).abs() / norms[0].0;
    assert!(norms[1].1 > norms[0].1);
    assert!(low < 0.02, "H^1.9 changes by {low:.4}");
}
