//! Batch experiment runners: the library side of the command-line tool.
//!
//! A single JSON config (every field optional, defaults built in) drives six
//! runners. Each runner writes CSV/JSON artifacts into an output directory
//! and returns the paths it created. Outputs are fully deterministic: a
//! given `(config, seed)` pair produces byte-identical files regardless of
//! worker-thread count, because each random unit derives its own RNG stream
//! and results are assembled in a fixed canonical order.
//!
//! Self-identification: every CSV begins with a comment line carrying the
//! SHA-256 hash of the resolved config and the seed, followed by a header
//! row. Floating-point CSV columns are printed with 17 significant digits
//! (`{:.16e}`) so values round-trip exactly; JSON artifacts rely on
//! `serde_json`'s shortest exact round-trip encoding.

use std::error::Error;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::beam::{analyze_psl, beam_map, BeamError, BeamMap};
use crate::crb::{crb_closed_form, CrbError, ObservationSpec, SourceDirection};
use crate::geometry::{Aperture, GeometryError, PortLayout};
use crate::placement::{
    count_interior_ports, greedy_select, greedy_select_detailed, random_baseline,
    uniform_grid_baseline, PlacementConfig, PlacementError,
};
use crate::seeding::derive_seed;
use crate::spacing::{sample_min_distances, Dimension, SpacingError, SpacingLaw};

/// Seed-derivation domain for the random baselines of the multi-aperture
/// bound sweep (index packs the `(w, m)` pair index and the trial number).
const DOMAIN_SWEEP_RANDOM: u64 = 1;
/// Seed-derivation domain for the random baselines of the placement report.
const DOMAIN_PLACE_RANDOM: u64 = 2;

/// Failure modes of a runner, grouped by the process exit code they map to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    /// Invalid or inconsistent configuration (exit code 2).
    Config(String),
    /// The request is well-formed but cannot be satisfied, e.g. more ports
    /// than the spacing admits (exit code 3).
    Infeasible(String),
    /// Filesystem failure while reading inputs or writing results
    /// (exit code 4).
    Io(String),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Config(msg) => write!(f, "configuration error: {msg}"),
            ExperimentError::Infeasible(msg) => write!(f, "infeasible request: {msg}"),
            ExperimentError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl Error for ExperimentError {}

impl ExperimentError {
    /// Process exit code for this error class (success is 0).
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::Infeasible(_) => 3,
            ExperimentError::Io(_) => 4,
        }
    }
}

impl From<PlacementError> for ExperimentError {
    fn from(e: PlacementError) -> Self {
        match e {
            PlacementError::EmptyCandidateSet { .. }
            | PlacementError::InfeasibleStage { .. }
            | PlacementError::RetryBudgetExhausted { .. }
            | PlacementError::Geometry(_) => ExperimentError::Infeasible(e.to_string()),
            _ => ExperimentError::Config(e.to_string()),
        }
    }
}

impl From<CrbError> for ExperimentError {
    fn from(e: CrbError) -> Self {
        match e {
            CrbError::CollinearLayout { .. } | CrbError::DegenerateAxis => {
                ExperimentError::Infeasible(e.to_string())
            }
            _ => ExperimentError::Config(e.to_string()),
        }
    }
}

impl From<SpacingError> for ExperimentError {
    fn from(e: SpacingError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}

impl From<BeamError> for ExperimentError {
    fn from(e: BeamError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}

impl From<GeometryError> for ExperimentError {
    fn from(e: GeometryError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}

impl From<std::io::Error> for ExperimentError {
    fn from(e: std::io::Error) -> Self {
        ExperimentError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for ExperimentError {
    fn from(e: serde_json::Error) -> Self {
        ExperimentError::Config(format!("invalid JSON: {e}"))
    }
}

/// Full experiment configuration.
///
/// Deserializes from JSON with every field optional (`{}` is the default
/// study) while rejecting unknown keys, so typos fail loudly instead of
/// silently running the default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Aperture width along x, in wavelengths.
    pub wx: f64,
    /// Aperture width along y, in wavelengths.
    pub wy: f64,
    /// Number of ports.
    pub m: usize,
    /// Minimum inter-port spacing, in wavelengths.
    pub d_min: f64,
    /// Candidate-grid pitch for the greedy search, in wavelengths.
    pub delta: f64,
    /// Source elevation in degrees.
    pub theta0_deg: f64,
    /// Source azimuth in degrees.
    pub phi0_deg: f64,
    /// Number of snapshots per observation.
    pub snapshots: usize,
    /// Signal-to-noise ratio in dB.
    pub snr_db: f64,
    /// Master seed; every random unit derives its own stream from it.
    pub seed: u64,
    /// Monte Carlo trials for the spacing histogram.
    pub trials: usize,
    /// Number of histogram bins.
    pub bins: usize,
    /// Lower end of the SNR sweep, in dB.
    pub snr_db_min: f64,
    /// Upper end of the SNR sweep, in dB.
    pub snr_db_max: f64,
    /// Step of the SNR sweep, in dB.
    pub snr_db_step: f64,
    /// Regularizer weight β₀ for single-layout runs.
    pub beta0: f64,
    /// β₀ values for the placement-and-beam comparison.
    pub beta0_list: Vec<f64>,
    /// Upper end of the β₀ trade-off sweep (lower end is 0).
    pub beta0_sweep_max: f64,
    /// Number of evenly spaced points in the β₀ trade-off sweep.
    pub beta0_sweep_points: usize,
    /// Random-baseline trials for the placement report.
    pub random_trials: usize,
    /// Random-baseline trials per `(w, m)` pair of the bound sweep.
    pub wm_random_trials: usize,
    /// Square-aperture side `w` and port count `m` pairs for the bound sweep.
    pub wm_configs: Vec<(f64, usize)>,
    /// Beam-map resolution per axis over `u, v ∈ [-1, 1]`.
    pub n_uv: usize,
    /// Clamp floor for beam-map dB values.
    pub db_floor: f64,
    /// Optional path to a layout JSON; when set, the beam runner analyzes it
    /// instead of running the greedy search.
    pub layout_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            wx: 2.0,
            wy: 2.0,
            m: 25,
            d_min: 0.2,
            delta: 0.1,
            theta0_deg: 45.0,
            phi0_deg: 30.0,
            snapshots: 100,
            snr_db: 10.0,
            seed: 1,
            trials: 100_000,
            bins: 60,
            snr_db_min: -10.0,
            snr_db_max: 30.0,
            snr_db_step: 2.0,
            beta0: 0.8,
            beta0_list: vec![0.0, 5.0, 10.0, 100.0],
            beta0_sweep_max: 5.0,
            beta0_sweep_points: 50,
            random_trials: 500,
            wm_random_trials: 200,
            wm_configs: vec![(1.0, 5), (2.0, 25), (4.0, 55), (6.0, 85)],
            n_uv: 301,
            db_floor: -30.0,
            layout_path: None,
        }
    }
}

impl ExperimentConfig {
    /// Checks cross-field consistency; runners assume a validated config.
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let ensure = |ok: bool, msg: String| {
            if ok {
                Ok(())
            } else {
                Err(ExperimentError::Config(msg))
            }
        };
        ensure(
            self.wx.is_finite() && self.wx > 0.0 && self.wy.is_finite() && self.wy > 0.0,
            format!("aperture sides must be positive and finite, got {} x {}", self.wx, self.wy),
        )?;
        ensure(self.m >= 2, format!("need at least 2 ports, got {}", self.m))?;
        ensure(
            self.d_min.is_finite() && self.d_min >= 0.0,
            format!("d_min must be non-negative and finite, got {}", self.d_min),
        )?;
        ensure(
            self.delta.is_finite() && self.delta > 0.0 && self.delta <= self.d_min,
            format!("need 0 < delta <= d_min, got delta={} d_min={}", self.delta, self.d_min),
        )?;
        ensure(
            self.theta0_deg.is_finite() && self.phi0_deg.is_finite(),
            format!("angles must be finite, got theta0={} phi0={}", self.theta0_deg, self.phi0_deg),
        )?;
        ensure(self.snapshots >= 1, format!("need at least 1 snapshot, got {}", self.snapshots))?;
        ensure(self.snr_db.is_finite(), format!("snr_db must be finite, got {}", self.snr_db))?;
        ensure(self.trials >= 1, format!("need at least 1 trial, got {}", self.trials))?;
        ensure(self.bins >= 1, format!("need at least 1 histogram bin, got {}", self.bins))?;
        ensure(
            self.snr_db_step > 0.0
                && self.snr_db_step.is_finite()
                && self.snr_db_min.is_finite()
                && self.snr_db_max.is_finite()
                && self.snr_db_min <= self.snr_db_max,
            format!(
                "need snr_db_min <= snr_db_max and snr_db_step > 0, got [{}, {}] step {}",
                self.snr_db_min, self.snr_db_max, self.snr_db_step
            ),
        )?;
        ensure(
            self.beta0.is_finite() && self.beta0 >= 0.0,
            format!("beta0 must be non-negative and finite, got {}", self.beta0),
        )?;
        for &b in &self.beta0_list {
            ensure(
                b.is_finite() && b >= 0.0,
                format!("beta0_list entries must be non-negative and finite, got {b}"),
            )?;
        }
        ensure(
            self.beta0_sweep_max.is_finite() && self.beta0_sweep_max >= 0.0,
            format!("beta0_sweep_max must be non-negative and finite, got {}", self.beta0_sweep_max),
        )?;
        ensure(
            self.beta0_sweep_points >= 2,
            format!("need at least 2 sweep points, got {}", self.beta0_sweep_points),
        )?;
        ensure(
            self.random_trials >= 1 && self.wm_random_trials >= 1,
            format!(
                "random-trial counts must be at least 1, got {} and {}",
                self.random_trials, self.wm_random_trials
            ),
        )?;
        for &(w, m) in &self.wm_configs {
            ensure(
                w.is_finite() && w > 0.0 && m >= 4,
                format!("wm_configs entries need w > 0 and m >= 4, got ({w}, {m})"),
            )?;
        }
        ensure(self.n_uv >= 3, format!("need n_uv >= 3, got {}", self.n_uv))?;
        ensure(self.db_floor.is_finite(), format!("db_floor must be finite, got {}", self.db_floor))?;
        Ok(())
    }
}

/// Reads a config file (or takes the defaults), applies the seed override,
/// and validates the result.
pub fn load_config(
    path: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<ExperimentConfig, ExperimentError> {
    let mut cfg: ExperimentConfig = match path {
        None => ExperimentConfig::default(),
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
    };
    if let Some(seed) = seed_override {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// SHA-256 hex digest of the resolved config's canonical JSON encoding.
pub fn config_sha256(cfg: &ExperimentConfig) -> String {
    let canonical = serde_json::to_string(cfg).expect("config always serializes");
    Sha256::digest(canonical.as_bytes()).iter().fold(
        String::with_capacity(64),
        |mut acc, byte| {
            use fmt::Write;
            write!(acc, "{byte:02x}").expect("writing to a String never fails");
            acc
        },
    )
}

/// 17-significant-digit encoding; parses back to the identical `f64`.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_contents(hash: &str, seed: u64, header: &str, rows: &[String]) -> String {
    let mut out = format!("# config_sha256={hash} seed={seed}\n{header}\n");
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf, ExperimentError> {
    fs::write(&path, contents)?;
    Ok(path)
}

fn write_json(path: PathBuf, value: &serde_json::Value) -> Result<PathBuf, ExperimentError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, &text)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Linearly interpolated quantile of a sorted slice, `q ∈ [0, 1]`.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("statistics are never NaN"));
    v
}

fn snr_grid(cfg: &ExperimentConfig) -> Vec<f64> {
    let count =
        ((cfg.snr_db_max - cfg.snr_db_min) / cfg.snr_db_step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| cfg.snr_db_min + k as f64 * cfg.snr_db_step).collect()
}

fn placement_config(
    cfg: &ExperimentConfig,
    aperture: Aperture,
    m: usize,
    beta0: f64,
) -> Result<PlacementConfig, ExperimentError> {
    Ok(PlacementConfig::new(m, aperture, cfg.delta, cfg.d_min, beta0)?)
}

/// Azimuth-invariant inertia determinant, evaluated in the native frame.
fn layout_det(layout: &PortLayout) -> f64 {
    layout.inertia_matrix(0.0).det()
}

/// Samples minimum inter-port distances, writes a density histogram next to
/// the closed-form law, and a JSON summary of moments and the KS distance.
///
/// Files: `mc_spacing.csv` (`bin_center,hist_density,pdf_theory`) and
/// `mc_spacing_summary.json`.
pub fn run_mc_spacing(
    cfg: &ExperimentConfig,
    out: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let aperture = Aperture::new(cfg.wx, cfg.wy)?;
    let law = SpacingLaw::new(cfg.m, aperture.area())?;
    let sample =
        sample_min_distances(cfg.m, &aperture, cfg.trials, cfg.seed, Dimension::Planar)?;
    let values = sample.values();
    let max = values.iter().cloned().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return Err(ExperimentError::Infeasible(
            "all sampled minimum distances were zero; histogram is degenerate".into(),
        ));
    }
    let width = max / cfg.bins as f64;
    let mut counts = vec![0usize; cfg.bins];
    for &v in values {
        let idx = ((v / width) as usize).min(cfg.bins - 1);
        counts[idx] += 1;
    }
    let n = values.len() as f64;
    let mut rows = Vec::with_capacity(cfg.bins);
    for (i, &count) in counts.iter().enumerate() {
        let center = (i as f64 + 0.5) * width;
        let density = count as f64 / (n * width);
        let theory = law.pdf(center)?;
        rows.push(format!("{},{},{}", sig17(center), sig17(density), sig17(theory)));
    }
    let csv = csv_contents(&hash, cfg.seed, "bin_center,hist_density,pdf_theory", &rows);
    let summary = serde_json::json!({
        "config_sha256": hash,
        "seed": cfg.seed,
        "m": cfg.m,
        "area": aperture.area(),
        "trials": cfg.trials,
        "mean_mc": sample.mean(),
        "mean_theory": law.mean(),
        "var_mc": sample.variance(),
        "var_theory": law.variance(),
        "ks": sample.ks_distance(&law)?,
    });
    Ok(vec![
        write_file(out.join("mc_spacing.csv"), &csv)?,
        write_json(out.join("mc_spacing_summary.json"), &summary)?,
    ])
}

/// Sweeps the elevation bound over SNR for greedy, uniform-grid, and random
/// layouts on each configured `(w, m)` square aperture.
///
/// Per pair: `crb_sweep_w{w}_m{m}.csv` with columns
/// `snr_db,crb_theta_greedy,crb_theta_uniform,crb_theta_random_mean` (each
/// column is the base bound at 0 dB scaled by `10^(-snr_db/10)`, so rows are
/// exactly proportional), and `crb_sweep_w{w}_m{m}_random_spread.json` with
/// the mean and 10th/90th percentiles of the random baseline.
pub fn run_crb_sweep(
    cfg: &ExperimentConfig,
    out: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let dir = SourceDirection::from_degrees(cfg.theta0_deg, cfg.phi0_deg)?;
    let obs_base = ObservationSpec::new(cfg.snapshots, 1.0)?;
    let snrs = snr_grid(cfg);
    let mut files = Vec::new();
    for (pair_idx, &(w, m)) in cfg.wm_configs.iter().enumerate() {
        let aperture = Aperture::new(w, w)?;
        let greedy = greedy_select(&placement_config(cfg, aperture, m, cfg.beta0)?)?;
        let uniform = uniform_grid_baseline(m, aperture)?;
        let crb_greedy = crb_closed_form(&greedy, &dir, &obs_base)?;
        let crb_uniform = crb_closed_form(&uniform, &dir, &obs_base)?;
        let random: Vec<(f64, f64)> = (0..cfg.wm_random_trials as u64)
            .into_par_iter()
            .map(|t| {
                let seed =
                    derive_seed(cfg.seed, DOMAIN_SWEEP_RANDOM, ((pair_idx as u64) << 32) | t);
                let layout = random_baseline(m, aperture, cfg.d_min, seed)?;
                let crb = crb_closed_form(&layout, &dir, &obs_base)?;
                Ok((crb.crb_theta, layout_det(&layout)))
            })
            .collect::<Result<_, ExperimentError>>()?;
        let crb_vals: Vec<f64> = random.iter().map(|r| r.0).collect();
        let det_vals: Vec<f64> = random.iter().map(|r| r.1).collect();
        let crb_random_mean = mean(&crb_vals);
        let crb_sorted = sorted(&crb_vals);
        let det_sorted = sorted(&det_vals);
        let rows: Vec<String> = snrs
            .iter()
            .map(|&snr_db| {
                let scale = 10f64.powf(-snr_db / 10.0);
                format!(
                    "{},{},{},{}",
                    sig17(snr_db),
                    sig17(crb_greedy.crb_theta * scale),
                    sig17(crb_uniform.crb_theta * scale),
                    sig17(crb_random_mean * scale),
                )
            })
            .collect();
        let header = "snr_db,crb_theta_greedy,crb_theta_uniform,crb_theta_random_mean";
        let csv = csv_contents(&hash, cfg.seed, header, &rows);
        files.push(write_file(out.join(format!("crb_sweep_w{w}_m{m}.csv")), &csv)?);
        let spread = serde_json::json!({
            "config_sha256": hash,
            "seed": cfg.seed,
            "w": w,
            "m": m,
            "random_trials": cfg.wm_random_trials,
            "det_greedy": layout_det(&greedy),
            "det_uniform": layout_det(&uniform),
            "det_random_mean": mean(&det_vals),
            "det_random_p10": percentile(&det_sorted, 0.10),
            "det_random_p90": percentile(&det_sorted, 0.90),
            "crb_theta_base_greedy": crb_greedy.crb_theta,
            "crb_theta_base_uniform": crb_uniform.crb_theta,
            "crb_theta_base_random_mean": crb_random_mean,
            "crb_theta_base_random_p10": percentile(&crb_sorted, 0.10),
            "crb_theta_base_random_p90": percentile(&crb_sorted, 0.90),
        });
        files.push(write_json(
            out.join(format!("crb_sweep_w{w}_m{m}_random_spread.json")),
            &spread,
        )?);
    }
    Ok(files)
}

/// Sweeps the regularizer weight β₀ from 0 to `beta0_sweep_max` and records
/// the geometry/estimation trade-off at each point.
///
/// File: `tradeoff.csv` with columns `beta0,det,crb_theta,n_interior`
/// (interior ports counted with margin `d_min / 2`).
pub fn run_tradeoff(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let aperture = Aperture::new(cfg.wx, cfg.wy)?;
    let dir = SourceDirection::from_degrees(cfg.theta0_deg, cfg.phi0_deg)?;
    let obs = ObservationSpec::from_snr_db(cfg.snapshots, cfg.snr_db)?;
    let margin = cfg.d_min / 2.0;
    let points = cfg.beta0_sweep_points;
    let betas: Vec<f64> = (0..points)
        .map(|k| cfg.beta0_sweep_max * k as f64 / (points - 1) as f64)
        .collect();
    let rows: Vec<String> = betas
        .par_iter()
        .map(|&beta0| {
            let layout = greedy_select(&placement_config(cfg, aperture, cfg.m, beta0)?)?;
            let crb = crb_closed_form(&layout, &dir, &obs)?;
            let interior = count_interior_ports(&layout, margin);
            Ok(format!(
                "{},{},{},{interior}",
                sig17(beta0),
                sig17(layout_det(&layout)),
                sig17(crb.crb_theta),
            ))
        })
        .collect::<Result<_, ExperimentError>>()?;
    let csv = csv_contents(&hash, cfg.seed, "beta0,det,crb_theta,n_interior", &rows);
    Ok(vec![write_file(out.join("tradeoff.csv"), &csv)?])
}

/// Runs the greedy placement once and reports the layout plus its scalar
/// figures of merit, including uniform and random baselines.
///
/// Files: `layout.json` (the port layout) and `place_report.json`.
pub fn run_place(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let aperture = Aperture::new(cfg.wx, cfg.wy)?;
    let dir = SourceDirection::from_degrees(cfg.theta0_deg, cfg.phi0_deg)?;
    let obs = ObservationSpec::from_snr_db(cfg.snapshots, cfg.snr_db)?;
    let selection = greedy_select_detailed(&placement_config(cfg, aperture, cfg.m, cfg.beta0)?)?;
    let crb = crb_closed_form(&selection.layout, &dir, &obs)?;
    let uniform = uniform_grid_baseline(cfg.m, aperture)?;
    let random_dets: Vec<f64> = (0..cfg.random_trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(cfg.seed, DOMAIN_PLACE_RANDOM, t);
            Ok(layout_det(&random_baseline(cfg.m, aperture, cfg.d_min, seed)?))
        })
        .collect::<Result<_, ExperimentError>>()?;
    let det_sorted = sorted(&random_dets);
    let report = serde_json::json!({
        "config_sha256": hash,
        "seed": cfg.seed,
        "m": cfg.m,
        "beta0": cfg.beta0,
        "beta": selection.beta,
        "det": layout_det(&selection.layout),
        "crb_theta": crb.crb_theta,
        "crb_phi": crb.crb_phi,
        "n_interior": count_interior_ports(&selection.layout, cfg.d_min / 2.0),
        "min_pairwise_distance": selection.layout.min_pairwise_distance(),
        "det_uniform": layout_det(&uniform),
        "random_trials": cfg.random_trials,
        "det_random_mean": mean(&random_dets),
        "det_random_p10": percentile(&det_sorted, 0.10),
        "det_random_p90": percentile(&det_sorted, 0.90),
    });
    let layout_json = serde_json::to_value(&selection.layout)?;
    Ok(vec![
        write_json(out.join("layout.json"), &layout_json)?,
        write_json(out.join("place_report.json"), &report)?,
    ])
}

/// Writes the beam-map CSV (valid visible-region cells only, dB clamped at
/// `db_floor`) and the sidelobe analysis JSON for one layout.
fn beam_artifacts(
    cfg: &ExperimentConfig,
    hash: &str,
    map: &BeamMap,
    out: &Path,
    csv_name: &str,
    psl_name: &str,
) -> Result<Vec<PathBuf>, ExperimentError> {
    let n = map.grid_size();
    let us = map.u_values();
    let vs = map.v_values();
    let mut rows = Vec::new();
    for (iu, &u) in us.iter().enumerate() {
        for (iv, &v) in vs.iter().enumerate() {
            if let Some(power) = map.power(iu, iv) {
                let db = (10.0 * power.log10()).max(cfg.db_floor);
                rows.push(format!("{},{},{}", sig17(u), sig17(v), sig17(db)));
            }
        }
    }
    let csv = csv_contents(hash, cfg.seed, "u,v,db", &rows);
    let (psl_db, cells, peak, side) = match analyze_psl(map) {
        Ok(a) => (Some(a.psl_db), a.main_lobe_cells, Some(a.peak_power), Some(a.peak_sidelobe_power)),
        Err(BeamError::NoSidelobe) => {
            let valid = (0..n)
                .map(|iu| (0..n).filter(|&iv| map.power(iu, iv).is_some()).count())
                .sum();
            (None, valid, None, None)
        }
        Err(e) => return Err(e.into()),
    };
    let psl = serde_json::json!({
        "config_sha256": hash,
        "seed": cfg.seed,
        "n_uv": n,
        "steer_u": map.steer().0,
        "steer_v": map.steer().1,
        "psl_db": psl_db,
        "main_lobe_cells": cells,
        "peak_power": peak,
        "peak_sidelobe_power": side,
    });
    Ok(vec![
        write_file(out.join(csv_name), &csv)?,
        write_json(out.join(psl_name), &psl)?,
    ])
}

/// Computes the beam map of one layout — either loaded from
/// `layout_path` or produced by the greedy search — and analyzes its
/// sidelobes.
///
/// Files: `layout.json` (echo of the analyzed layout), `beam_map.csv`
/// (`u,v,db` over valid cells), and `psl.json`.
pub fn run_beam(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let layout = match &cfg.layout_path {
        Some(path) => serde_json::from_str::<PortLayout>(&fs::read_to_string(path)?)?,
        None => {
            let aperture = Aperture::new(cfg.wx, cfg.wy)?;
            greedy_select(&placement_config(cfg, aperture, cfg.m, cfg.beta0)?)?
        }
    };
    let dir = SourceDirection::from_degrees(cfg.theta0_deg, cfg.phi0_deg)?;
    let map = beam_map(&layout, &dir, cfg.n_uv)?;
    let mut files = vec![write_json(out.join("layout.json"), &serde_json::to_value(&layout)?)?];
    files.extend(beam_artifacts(cfg, &hash, &map, out, "beam_map.csv", "psl.json")?);
    Ok(files)
}

/// Runs the greedy placement at every β₀ in `beta0_list` and emits the
/// layout, beam map, and sidelobe analysis for each.
///
/// Files per weight: `layout_beta0_{β₀}.json`, `beam_beta0_{β₀}.csv`,
/// `psl_beta0_{β₀}.json`.
pub fn run_place_and_beam(
    cfg: &ExperimentConfig,
    out: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(out)?;
    let hash = config_sha256(cfg);
    let aperture = Aperture::new(cfg.wx, cfg.wy)?;
    let dir = SourceDirection::from_degrees(cfg.theta0_deg, cfg.phi0_deg)?;
    let mut files = Vec::new();
    for &beta0 in &cfg.beta0_list {
        let layout = greedy_select(&placement_config(cfg, aperture, cfg.m, beta0)?)?;
        let map = beam_map(&layout, &dir, cfg.n_uv)?;
        files.push(write_json(
            out.join(format!("layout_beta0_{beta0}.json")),
            &serde_json::to_value(&layout)?,
        )?);
        files.extend(beam_artifacts(
            cfg,
            &hash,
            &map,
            out,
            &format!("beam_beta0_{beta0}.csv"),
            &format!("psl_beta0_{beta0}.json"),
        )?);
    }
    Ok(files)
}
