//! Experiment configuration: a TOML document whose keys are dotted section
//! names (`grid.n_points = 4096` or an equivalent `[grid]` table). Every
//! section is optional and falls back to its defaults; unknown keys are
//! rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial_data::BlowupParams;
use crate::norms::RegularityBudget;
use crate::solver::{DuhamelRule, PicardOptions, SystemParams};
use crate::spectral::Grid1D;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Base resolution; refinement studies use `N`, `2N`, `4N`.
    pub n_points: usize,
    pub box_length: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_points: 2048,
            box_length: 640.0,
        }
    }
}

impl GridConfig {
    /// The grid refined `level` times by doubling.
    pub fn grid(&self, level: u32) -> Result<Grid1D> {
        Grid1D::new(self.n_points << level, self.box_length)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeConfig {
    /// Final time `T`; at most 1/2.
    pub t_final: f64,
    pub dt: f64,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig { t_final: 0.5, dt: 5e-4 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    #[default]
    Picard,
    Splitstep,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub method: SolverMethod,
    pub rule: DuhamelRule,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: SolverMethod::Picard,
            rule: DuhamelRule::ExponentialLinear,
            max_iter: 60,
            tol: 1e-12,
        }
    }
}

impl SolverConfig {
    pub fn picard_options(&self) -> PicardOptions {
        PicardOptions {
            max_iter: self.max_iter,
            tol: self.tol,
            rule: self.rule,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    /// Chirped `u₀` and kink-built `v₀`.
    #[default]
    Blowup,
    /// `u₀ = A e^{iκx} e^{−((x−c)/w)²}`, `v₀ = B e^{−(x/w_v)²}`.
    Gaussian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataConfig {
    pub kind: DataKind,
    pub u_amplitude: f64,
    pub u_width: f64,
    pub u_center: f64,
    pub u_wavenumber: f64,
    pub v_amplitude: f64,
    pub v_width: f64,
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig {
            kind: DataKind::Blowup,
            u_amplitude: 1.0,
            u_width: 4.0,
            u_center: 0.0,
            u_wavenumber: 0.5,
            v_amplitude: 0.5,
            v_width: 5.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BlowupConfig {
    pub theta: f64,
    pub x0: f64,
    pub series_length: usize,
    pub coeff_decay: f64,
    /// `ε` in the `C^{1,1/2+ε}` quotient of the `u`-channel.
    pub holder_epsilon: f64,
    /// Hölder exponent of the `v`-channel `C¹` quotient.
    pub v_alpha: f64,
}

impl Default for BlowupConfig {
    fn default() -> Self {
        let p = BlowupParams::default();
        BlowupConfig {
            theta: 0.625,
            x0: p.x0,
            series_length: p.series_length,
            coeff_decay: p.coeff_decay,
            holder_epsilon: 1.0 / 16.0,
            v_alpha: 1.0,
        }
    }
}

impl BlowupConfig {
    pub fn params(&self) -> BlowupParams {
        BlowupParams {
            theta: self.theta,
            x0: self.x0,
            series_length: self.series_length,
            coeff_decay: self.coeff_decay,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetConfig {
    pub s: f64,
    pub b: f64,
    pub beta: f64,
    pub abar: f64,
    pub a: f64,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            s: 1.35,
            b: 0.49,
            beta: 0.55,
            abar: 0.05,
            a: 0.5,
        }
    }
}

impl BudgetConfig {
    pub fn budget(&self) -> Result<RegularityBudget> {
        RegularityBudget::new(self.s, self.b, self.beta, self.abar, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    /// Also run the other integrator and compare on `t ≤ T/2`.
    pub compare: bool,
    /// Stride between rows of the time-series CSV.
    pub sample_every: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        SimulateConfig {
            compare: false,
            sample_every: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SmoothingConfig {
    /// Tail-fit band as fractions of the finest grid's largest frequency.
    pub tail_lo_fraction: f64,
    pub tail_hi_fraction: f64,
    /// Exponent at which the free part is checked for non-convergence.
    pub free_exponent: f64,
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        SmoothingConfig {
            tail_lo_fraction: 0.125,
            tail_hi_fraction: 0.5,
            free_exponent: 2.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditConfig {
    pub xi_max: f64,
    pub xi_min: f64,
    pub points_per_octave: usize,
    pub theta_range: f64,
    pub theta_points: usize,
    pub quad_points: usize,
    /// `[b, β, a]` triples for the Schrödinger-product kernel.
    pub schrodinger_triples: Vec<[f64; 3]>,
    /// `[b, β, a]` triples for the derivative-product kernel.
    pub kdv5_triples: Vec<[f64; 3]>,
    /// `[β, γ]` pairs for the calculus-inequality sweep.
    pub calculus_pairs: Vec<[f64; 2]>,
    pub calculus_separations: Vec<f64>,
    pub two_route_probes: usize,
    pub seed: u64,
    /// Excess over `5β − 9/4` for the reported counterexample probe.
    pub violation_excess: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            xi_max: 50.0,
            xi_min: 0.125,
            points_per_octave: 8,
            theta_range: 0.5,
            theta_points: 11,
            quad_points: 64,
            schrodinger_triples: vec![[0.49, 0.55, 0.58], [0.48, 0.52, 0.57], [0.47, 0.51, 0.55]],
            kdv5_triples: vec![[0.49, 0.7, 1.0], [0.45, 0.6, 0.5], [0.4, 0.52, 0.2]],
            calculus_pairs: vec![[1.2, 0.9], [1.0, 0.5], [0.6, 0.6]],
            calculus_separations: vec![10.0, 100.0, 1000.0],
            two_route_probes: 3,
            seed: 2026,
            violation_excess: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormsConfig {
    /// Snapshot to analyse; when absent the configured initial data is used.
    pub snapshot: Option<PathBuf>,
    pub sobolev_exponents: Vec<f64>,
    pub holder_order: u32,
    pub holder_alpha: f64,
    pub tail_lo_fraction: f64,
    pub tail_hi_fraction: f64,
}

impl Default for NormsConfig {
    fn default() -> Self {
        NormsConfig {
            snapshot: None,
            sobolev_exponents: vec![0.0, 1.0, 1.9, 2.1],
            holder_order: 1,
            holder_alpha: 0.5,
            tail_lo_fraction: 0.125,
            tail_hi_fraction: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SnapshotConfig {
    /// Times at which `u` and `v` are written.
    pub times: Vec<f64>,
}

impl Default for SnapshotConfig {
    fn default() -> Self {
        SnapshotConfig { times: vec![0.0] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: PathBuf::from("out"),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
        }
    }
}

/// Which experiment a configuration is validated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Study {
    Simulate,
    Smoothing,
    Blowup,
    Audit,
    Norms,
    Snapshot,
}

impl Study {
    pub fn name(self) -> &'static str {
        match self {
            Study::Simulate => "simulate",
            Study::Smoothing => "smoothing",
            Study::Blowup => "blowup",
            Study::Audit => "audit",
            Study::Norms => "norms",
            Study::Snapshot => "snapshot",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub params: SystemParams,
    pub solver: SolverConfig,
    pub data: DataConfig,
    pub blowup: BlowupConfig,
    pub budget: BudgetConfig,
    pub simulate: SimulateConfig,
    pub smoothing: SmoothingConfig,
    pub audit: AuditConfig,
    pub norms: NormsConfig,
    pub snapshot: SnapshotConfig,
    pub outputs: OutputConfig,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    /// Parses TOML text; unknown keys and type mismatches are errors.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| config_err(e.to_string().trim_end().to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    /// Checks the invariants relevant to `study`.
    pub fn validate(&self, study: Study) -> Result<()> {
        if study == Study::Audit {
            return self.validate_audit();
        }
        self.grid.grid(0)?;
        self.params.validate()?;
        let (t, dt) = (self.time.t_final, self.time.dt);
        if !(t.is_finite() && t > 0.0 && t <= 0.5) {
            return Err(config_err(format!("time.t_final must lie in (0, 1/2], got {t}")));
        }
        if !(dt.is_finite() && dt > 0.0 && dt <= t) {
            return Err(config_err(format!("time.dt must lie in (0, t_final], got {dt}")));
        }
        let steps = (t / dt).round();
        if ((steps * dt - t) / t).abs() > 1e-9 {
            return Err(config_err(format!("time.dt = {dt} does not divide time.t_final = {t}")));
        }
        if self.solver.max_iter == 0 || self.solver.tol.is_nan() || self.solver.tol <= 0.0 {
            return Err(config_err("solver.max_iter must be positive and solver.tol > 0"));
        }
        if self.data.kind == DataKind::Blowup || matches!(study, Study::Smoothing | Study::Blowup) {
            self.blowup.params().validate()?;
        }
        if self.data.kind == DataKind::Gaussian && !(self.data.u_width > 0.0 && self.data.v_width > 0.0) {
            return Err(config_err("data.u_width and data.v_width must be positive"));
        }
        if self.simulate.sample_every == 0 {
            return Err(config_err("simulate.sample_every must be positive"));
        }
        match study {
            Study::Smoothing | Study::Blowup => {
                let t_star = self.blowup.params().t_star();
                if t_star > t * (1.0 + 1e-12) {
                    return Err(config_err(format!(
                        "focusing time t* = 1/(4 theta) = {t_star} exceeds time.t_final = {t}"
                    )));
                }
                if study == Study::Smoothing {
                    self.budget.budget()?;
                    let s = &self.smoothing;
                    if !(s.tail_lo_fraction > 0.0
                        && s.tail_hi_fraction <= 1.0
                        && s.tail_hi_fraction >= 2.0 * s.tail_lo_fraction)
                    {
                        return Err(config_err("smoothing tail band must satisfy 0 < lo, 2 lo <= hi <= 1"));
                    }
                } else {
                    let eps = self.blowup.holder_epsilon;
                    if !(eps > 0.0 && eps < 0.5) {
                        return Err(config_err(format!(
                            "blowup.holder_epsilon must lie in (0, 1/2), got {eps}"
                        )));
                    }
                    let va = self.blowup.v_alpha;
                    if !(va > 0.0 && va <= 1.0) {
                        return Err(config_err(format!("blowup.v_alpha must lie in (0, 1], got {va}")));
                    }
                }
            }
            Study::Norms => {
                let n = &self.norms;
                if n.holder_order > 1 || !(n.holder_alpha > 0.0 && n.holder_alpha <= 1.0) {
                    return Err(config_err(
                        "norms.holder_order must be 0 or 1 and norms.holder_alpha in (0, 1]",
                    ));
                }
                if !(n.tail_lo_fraction > 0.0
                    && n.tail_hi_fraction <= 1.0
                    && n.tail_hi_fraction >= 2.0 * n.tail_lo_fraction)
                {
                    return Err(config_err("norms tail band must satisfy 0 < lo, 2 lo <= hi <= 1"));
                }
                if n.sobolev_exponents.iter().any(|s| !s.is_finite()) {
                    return Err(config_err("norms.sobolev_exponents must be finite"));
                }
            }
            Study::Snapshot => {
                if self.snapshot.times.is_empty() {
                    return Err(config_err("snapshot.times must not be empty"));
                }
                if let Some(bad) = self
                    .snapshot
                    .times
                    .iter()
                    .find(|&&s| !(s >= 0.0 && s <= t * (1.0 + 1e-12)))
                {
                    return Err(config_err(format!("snapshot time {bad} outside [0, t_final]")));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn validate_audit(&self) -> Result<()> {
        let a = &self.audit;
        if a.quad_points < crate::audit::MIN_QUAD_POINTS {
            return Err(config_err(format!(
                "audit.quad_points must be at least {}",
                crate::audit::MIN_QUAD_POINTS
            )));
        }
        if !(a.xi_max.is_finite() && a.xi_min > 0.0 && a.xi_max > 2.0 * a.xi_min) {
            return Err(config_err("audit lattice needs 0 < 2 xi_min < xi_max < inf"));
        }
        if a.points_per_octave == 0 || a.theta_points == 0 || !(a.theta_range >= 0.0 && a.theta_range.is_finite()) {
            return Err(config_err(
                "audit lattice counts must be positive and theta_range finite",
            ));
        }
        if a.calculus_separations.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(config_err("audit.calculus_separations must be finite and nonnegative"));
        }
        if !(a.violation_excess > 0.0 && a.violation_excess.is_finite()) {
            return Err(config_err("audit.violation_excess must be positive"));
        }
        Ok(())
    }

    /// Output directory, overridden by `out` when given.
    pub fn output_dir(&self, out: Option<&Path>) -> PathBuf {
        out.map(Path::to_path_buf)
            .unwrap_or_else(|| self.outputs.directory.clone())
    }
}
