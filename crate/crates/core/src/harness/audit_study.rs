use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{AuditConfig, ExperimentConfig, Study};
use super::report::{fmt_f64, Relation, Report, Series, Verdict};
use super::tolerances::*;
use crate::audit::{
    calculus_bound_ratio, kdv5_kernel_sup, schrodinger_kernel_sup, two_route, KernelKind, KernelQuery, KernelSup,
    TwoRoute, STABILIZATION_TOL,
};
use crate::error::Result;

fn query(a: &AuditConfig, [b, beta, exp_a]: [f64; 3]) -> KernelQuery {
    KernelQuery {
        xi_max: a.xi_max,
        xi_min: a.xi_min,
        points_per_octave: a.points_per_octave,
        theta_range: a.theta_range,
        theta_points: a.theta_points,
        quad_points: a.quad_points,
        ..KernelQuery::new(exp_a, beta, b)
    }
}

fn sup(kind: KernelKind, q: &KernelQuery) -> Result<KernelSup> {
    match kind {
        KernelKind::Schrodinger => schrodinger_kernel_sup(q),
        KernelKind::Kdv5 => kdv5_kernel_sup(q),
    }
}

#[derive(Clone, Debug, Serialize)]
struct KernelEntry {
    kind: KernelKind,
    triple: [f64; 3],
    result: KernelSup,
}

/// Calculus-inequality sweeps, kernel suprema over the configured exponent
/// triples, quadrature refinement, two-route probes and the counterexample
/// probe.
pub fn run_estimate_audit(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate(Study::Audit)?;
    let a = &cfg.audit;
    let mut report = Report::new("audit");
    report.tolerance("stabilization", STABILIZATION_TOL);

    let mut calc = Series::new(
        "calculus",
        &["beta", "gamma", "separation", "integral", "bound", "ratio"],
    );
    for &[beta, gamma] in &a.calculus_pairs {
        let mut ratios = Vec::new();
        for &d in &a.calculus_separations {
            let r = calculus_bound_ratio(beta, gamma, 0.0, d)?;
            calc.push_f64(&[beta, gamma, d, r.integral, r.bound, r.ratio]);
            ratios.push(r.ratio);
        }
        let hi = ratios.iter().copied().fold(0.0, f64::max);
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        report.verdict(Verdict::new(
            format!("calculus_spread_beta{beta}_gamma{gamma}"),
            hi / lo,
            Relation::Le,
            CALCULUS_SPREAD,
        ));
    }
    report.series.push(calc);

    let mut profile = Series::new(
        "kernel_profiles",
        &["kernel", "b", "beta", "a", "xi_cut", "running_sup"],
    );
    let mut entries = Vec::new();
    for (kind, triples) in [
        (KernelKind::Schrodinger, &a.schrodinger_triples),
        (KernelKind::Kdv5, &a.kdv5_triples),
    ] {
        for &triple in triples {
            let q = query(a, triple);
            let result = sup(kind, &q)?;
            for &(cut, s) in &result.running {
                let mut row = vec![kind.name().to_string()];
                row.extend([triple[0], triple[1], triple[2], cut, s].iter().map(|&x| fmt_f64(x)));
                profile.push(row);
            }
            report.verdict(
                Verdict::new(
                    format!(
                        "{}_stabilization_b{}_beta{}_a{}",
                        kind.name(),
                        triple[0],
                        triple[1],
                        triple[2]
                    ),
                    result.last_range_growth,
                    Relation::Lt,
                    STABILIZATION_TOL,
                )
                .with_note(format!(
                    "sup {:.6e} at (xi, tau) = ({:.4}, {:.4})",
                    result.sup_value, result.argmax.0, result.argmax.1
                )),
            );
            entries.push(KernelEntry { kind, triple, result });
        }
    }
    report.series.push(profile);

    let mut probes: Vec<TwoRoute> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for (kind, triples) in [
        (KernelKind::Schrodinger, &a.schrodinger_triples),
        (KernelKind::Kdv5, &a.kdv5_triples),
    ] {
        let Some(&first) = triples.first() else { continue };
        let q = query(a, first);

        let mut fine = q.clone();
        fine.quad_points *= 2;
        let coarse = sup(kind, &q)?.sup_value;
        let refined = sup(kind, &fine)?.sup_value;
        report.verdict(Verdict::new(
            format!("{}_quadrature_refinement", kind.name()),
            (refined - coarse).abs() / coarse,
            Relation::Lt,
            QUADRATURE_REFINEMENT,
        ));

        for i in 0..a.two_route_probes {
            let xi: f64 = rng.gen_range(-4.0..4.0);
            let theta: f64 = rng.gen_range(-a.theta_range..=a.theta_range);
            let tau = -kind.output_symbol(xi) * (1.0 + theta);
            let r = two_route(kind, &q, xi, tau)?;
            let name = format!("{}_two_route_{i}", kind.name());
            let note = format!("(xi, tau) = ({xi:.4}, {tau:.4})");
            report.verdict(
                Verdict::new(format!("{name}_lower"), r.ratio, Relation::Ge, TWO_ROUTE_LO).with_note(note.clone()),
            );
            report.verdict(Verdict::new(format!("{name}_upper"), r.ratio, Relation::Le, TWO_ROUTE_HI).with_note(note));
            probes.push(r);
        }
    }
    report.metric("two_route", &probes);

    if let Some(&[b, beta, _]) = a.kdv5_triples.first() {
        let mut q = query(a, [b, beta, 5.0 * beta - 2.25 + a.violation_excess]);
        q.allow_inadmissible = true;
        let probe = kdv5_kernel_sup(&q)?;
        report.verdict(
            Verdict::new(
                "kdv5_violation_growth",
                probe.last_range_growth,
                Relation::Ge,
                VIOLATION_GROWTH,
            )
            .informational()
            .with_note(format!("a = {} exceeds 5 beta - 9/4", q.a)),
        );
        report.metric("kdv5_violation_probe", &probe);
    }
    report.metric("kernels", &entries);
    Ok(report)
}
