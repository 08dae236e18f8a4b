//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line (written
//! straight to stdout so it shows without `--nocapture`) and then asserts.

use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skdv::harness::{run_blowup_study, run_estimate_audit, run_smoothing_study, ExperimentConfig, Report};
use skdv::norms::RegularityBudget;
use skdv::solver::{picard_solve, splitstep_evolve, sup_relative_difference, PicardOptions, SystemParams};
use skdv::{apply_group, group_law_defect, Dispersion, Field, Grid1D};

fn report_line(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "\ncriterion {criterion}: {verdict}  {detail}").unwrap();
}

fn config(name: &str) -> ExperimentConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name);
    ExperimentConfig::from_path(&path).unwrap()
}

/// Checks the named verdicts of a study report, prints the line and asserts.
fn check_verdicts(criterion: u32, report: &Report, names: &[&str]) {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let v = report
            .verdict_named(name)
            .unwrap_or_else(|| panic!("report has no verdict {name}"));
        pass &= v.pass;
        parts.push(format!(
            "{}={:.4e}{}{:e}",
            v.name,
            v.value,
            v.relation.symbol(),
            v.threshold
        ));
    }
    report_line(criterion, pass, &parts.join(" "));
    assert!(pass, "criterion {criterion}: {}", parts.join(", "));
}

fn random_field(grid: &Grid1D, rng: &mut ChaCha8Rng) -> Field {
    Field::from_fn(grid, |_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

#[test]
fn criterion_1_linear_flows_are_exact() {
    let grid = Grid1D::new(1024, 100.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut unitarity: f64 = 0.0;
    let mut group: f64 = 0.0;
    for _ in 0..8 {
        let f = random_field(&grid, &mut rng);
        let (t1, t2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for kind in [Dispersion::Schrodinger, Dispersion::FifthOrder] {
            let g = apply_group(kind, &f, t1).unwrap();
            unitarity = unitarity.max((g.l2_norm() - f.l2_norm()).abs() / f.l2_norm());
            group = group.max(group_law_defect(kind, &f, t1, t2).unwrap());
        }
    }

    // e^{it d_xx} e^{-x^2} = (1 + 4it)^{-1/2} exp(-x^2 / (1 + 4it))
    let gauss = Field::from_real_fn(&grid, |x| (-x * x).exp());
    let mut closed_form: f64 = 0.0;
    for t in [0.05, 0.3, 1.0, 2.0] {
        let evolved = apply_group(Dispersion::Schrodinger, &gauss, t).unwrap().into_physical();
        let z = Complex64::new(1.0, 4.0 * t);
        for (&x, &w) in grid.positions().iter().zip(evolved.values()) {
            closed_form = closed_form.max((w - (-x * x / z).exp() / z.sqrt()).norm());
        }
    }

    let pass = unitarity <= 1e-12 && group <= 1e-12 && closed_form <= 1e-8;
    report_line(
        1,
        pass,
        &format!("unitarity={unitarity:.2e} group_law={group:.2e} gaussian_sup={closed_form:.2e}"),
    );
    assert!(pass);
}

struct ConservationRun {
    mass_drift: f64,
    mean_drift: f64,
    agreement: f64,
    defects: Vec<f64>,
}

fn conservation_run() -> ConservationRun {
    let grid = Grid1D::new(2048, 200.0).unwrap();
    let u0 = Field::from_fn(&grid, |x| Complex64::from_polar((-(x / 4.0).powi(2)).exp(), 0.5 * x));
    let v0 = Field::from_real_fn(&grid, |x| 0.5 * (-(x / 5.0).powi(2)).exp());
    let params = SystemParams::new(1.0, 1.0, 1.0).unwrap();
    let (t, dt) = (0.05, 1e-4);

    let split = splitstep_evolve(&u0, &v0, &params, t, dt).unwrap();
    let mass0 = u0.l2_norm();
    let mean0 = v0.integral().re;
    let mass_drift = split
        .u
        .iter()
        .map(|u| (u.l2_norm() - mass0).abs() / mass0)
        .fold(0.0, f64::max);
    let mean_drift = split
        .v
        .iter()
        .map(|v| (v.integral().re - mean0).abs())
        .fold(0.0, f64::max);

    let picard = picard_solve(&u0, &v0, &params, t, dt, &PicardOptions::default()).unwrap();
    let agreement =
        sup_relative_difference(&picard.trajectory.restricted(0.5 * t), &split.restricted(0.5 * t)).unwrap();
    ConservationRun {
        mass_drift,
        mean_drift,
        agreement,
        defects: picard.defects,
    }
}

#[test]
fn criteria_2_and_3_conservation_and_oracle_equivalence() {
    let run = conservation_run();

    let pass2 = run.mass_drift <= 1e-8 && run.mean_drift <= 1e-10;
    report_line(
        2,
        pass2,
        &format!("mass_drift={:.2e} mean_drift={:.2e}", run.mass_drift, run.mean_drift),
    );

    let decreasing = run.defects.windows(2).all(|w| w[1] < w[0]);
    let final_ratio = match run.defects.as_slice() {
        [.., a, b] => b / a,
        _ => 0.0,
    };
    let pass3 = run.agreement <= 1e-6 && decreasing && final_ratio < 0.5;
    report_line(
        3,
        pass3,
        &format!(
            "agreement={:.2e} sweeps={} strictly_decreasing={decreasing} final_ratio={final_ratio:.3e}",
            run.agreement,
            run.defects.len()
        ),
    );
    assert!(pass2 && pass3);
}

#[test]
fn criterion_4_nonlinear_smoothing() {
    let cfg = config("smoothing.toml");
    assert_eq!(cfg.grid.n_points, 2048);
    let budget = cfg.budget.budget().unwrap();
    assert_eq!((budget.b, budget.beta, budget.abar, budget.a), (0.49, 0.55, 0.05, 0.5));
    assert!((budget.s - (2.0 - 0.1 - budget.beta)).abs() < 1e-12);
    let report = run_smoothing_study(&cfg).unwrap();
    check_verdicts(4, &report, &["u1_grid_change", "free_u_grid_change", "v1_tail_gain"]);
}

#[test]
fn criterion_5_dispersive_blowup() {
    let cfg = config("blowup.toml");
    assert_eq!(cfg.grid.n_points, 2048);
    assert_eq!(cfg.blowup.holder_epsilon, 1.0 / 16.0);
    let report = run_blowup_study(&cfg).unwrap();
    check_verdicts(
        5,
        &report,
        &[
            "u_growth_at_t_star",
            "u_argmax_offset_cells",
            "u_growth_at_half_t_star",
            "v_growth_at_t_star",
            "v_argmax_offset_cells",
        ],
    );
}

#[test]
fn criterion_6_estimate_audits() {
    let cfg = config("audit.toml");
    assert_eq!(cfg.audit.calculus_separations, vec![10.0, 100.0, 1000.0]);
    assert_eq!(cfg.audit.two_route_probes, 3);
    let report = run_estimate_audit(&cfg).unwrap();
    let names: Vec<&str> = report
        .verdicts
        .iter()
        .filter(|v| v.counted)
        .map(|v| v.name.as_str())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("calculus_spread")));
    assert!(names.iter().any(|n| n.starts_with("schrodinger_stabilization")));
    assert!(names.iter().any(|n| n.starts_with("kdv5_stabilization")));
    assert_eq!(names.iter().filter(|n| n.contains("two_route")).count(), 12);
    check_verdicts(6, &report, &names);
}

#[test]
fn criterion_7_admissibility_gate() {
    // (s, b, beta, abar, a, admissible)
    let table: [(f64, f64, f64, f64, f64, bool); 12] = [
        (1.35, 0.49, 0.55, 0.05, 0.5, true),
        (0.0, 0.49, 0.55, 0.05, 0.5, true),
        (0.0, 0.49, 0.59, 0.01, 0.7, true),
        (0.0, 0.46, 0.51, 0.0, 0.3, true),
        (-0.1, 0.49, 0.55, 0.0, 0.0, false),
        (0.0, 0.45, 0.5, 0.0, 0.0, false),
        (0.0, 0.5, 0.6, 0.0, 0.0, false),
        (0.0, 0.49, 0.5, 0.0, 0.0, false),
        (0.0, 0.49, 0.6, 0.0, 0.0, false),
        (0.0, 0.49, 0.55, 0.06, 0.0, false),
        (0.0, 0.49, 0.55, 0.0, 0.51, false),
        (0.0, 0.49, 0.55, -0.01, 0.0, false),
    ];
    let mismatches: Vec<_> = table
        .iter()
        .filter(|&&(s, b, beta, abar, a, ok)| RegularityBudget::new(s, b, beta, abar, a).is_ok() != ok)
        .collect();
    let pass = mismatches.is_empty();
    report_line(7, pass, &format!("{} cases, mismatches={mismatches:?}", table.len()));
    assert!(pass);
}
