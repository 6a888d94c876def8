//! Configuration files, command-line interface and artifact writing.
//!
//! The binary reads an optional TOML config (every field has a default, so
//! an empty file and no file are both valid), runs one subcommand, writes
//! its CSV/SVG artifacts into the output directory and finishes with a
//! `manifest.json` describing the run. Exit codes: 0 success, 2 usage or
//! config problems, 3 numerical or solver failures.

use crate::force::{self, ForceError, SpringParams};
use crate::geometry::Point2;
use crate::hoeckens::{self, HoeckensError, HoeckensParams};
use crate::mechanism::{self, FingerConfig, MechanismError};
use crate::numfmt::fmt6;
use crate::optimize::{self, ScanError, ScanSpec, TraceSpec};
use crate::svg;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Config schema understood by this build.
pub const SCHEMA_VERSION: u32 = 1;

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Top-level TOML config. Unknown fields are rejected; omitted fields take
/// the defaults listed per section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub schema_version: u32,
    pub hoeckens: HoeckensSection,
    pub finger: FingerSection,
    pub springs: SpringsSection,
    pub scan: ScanSection,
    pub force: ForceSection,
    pub trajectory: TrajectorySection,
    pub band: BandSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema_version: default_schema_version(),
            hoeckens: HoeckensSection::default(),
            finger: FingerSection::default(),
            springs: SpringsSection::default(),
            scan: ScanSection::default(),
            force: ForceSection::default(),
            trajectory: TrajectorySection::default(),
            band: BandSection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HoeckensSection {
    pub crank_mm: f64,
    pub pivot_offset_mm: f64,
    pub rod_mm: f64,
}

impl Default for HoeckensSection {
    fn default() -> Self {
        HoeckensSection {
            crank_mm: 30.0,
            pivot_offset_mm: 45.0,
            rod_mm: 180.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FingerSection {
    pub l_ag_mm: f64,
    pub l_gd_mm: f64,
    pub q2_deg: f64,
    pub q3_deg: f64,
    pub delta_h1_mm: f64,
    pub delta_h2_mm: f64,
    pub delta_theta1_max_deg: f64,
    pub l_di_mm: f64,
    pub h_max_mm: f64,
    pub h_min_mm: f64,
    pub stroke_lo_deg: f64,
    pub stroke_hi_deg: f64,
}

impl Default for FingerSection {
    fn default() -> Self {
        let c = FingerConfig::default();
        FingerSection {
            l_ag_mm: c.l_ag,
            l_gd_mm: c.l_gd,
            q2_deg: c.q2_deg,
            q3_deg: c.q3_deg,
            delta_h1_mm: c.delta_h1,
            delta_h2_mm: c.delta_h2,
            delta_theta1_max_deg: c.delta_theta1_max_deg,
            l_di_mm: c.l_di,
            h_max_mm: c.h_max,
            h_min_mm: c.h_min,
            stroke_lo_deg: c.stroke_lo_deg,
            stroke_hi_deg: c.stroke_hi_deg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpringsSection {
    pub k1_nmm_per_rad: f64,
    pub k2_n_per_mm: f64,
    pub pretension_deg: f64,
    pub attach_r_mm: f64,
}

impl Default for SpringsSection {
    fn default() -> Self {
        let s = SpringParams::default();
        SpringsSection {
            k1_nmm_per_rad: s.k1,
            k2_n_per_mm: s.k2,
            pretension_deg: s.pretension_deg,
            attach_r_mm: s.attach_r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanSection {
    pub l_ag_min_mm: f64,
    pub l_ag_max_mm: f64,
    pub l_gd_min_mm: f64,
    pub l_gd_max_mm: f64,
    pub resolution_mm: f64,
    pub trace_step_deg: f64,
    pub margin_mm: f64,
}

impl Default for ScanSection {
    fn default() -> Self {
        let s = ScanSpec::default();
        ScanSection {
            l_ag_min_mm: s.l_ag_min,
            l_ag_max_mm: s.l_ag_max,
            l_gd_min_mm: s.l_gd_min,
            l_gd_max_mm: s.l_gd_max,
            resolution_mm: s.resolution,
            trace_step_deg: s.trace.step_deg,
            margin_mm: s.margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ForceSection {
    pub omega1_deg_s: f64,
    pub theta1_deg: Vec<f64>,
    pub p_min_w: f64,
    pub p_max_w: f64,
    pub p_steps: usize,
    pub r_min_mm: f64,
    pub r_max_mm: f64,
    pub r_steps: usize,
}

impl Default for ForceSection {
    fn default() -> Self {
        ForceSection {
            omega1_deg_s: 10.0,
            theta1_deg: vec![80.0, 120.0],
            p_min_w: 0.2,
            p_max_w: 1.0,
            p_steps: 9,
            r_min_mm: 10.0,
            r_max_mm: 55.0,
            r_steps: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrajectorySection {
    pub omega1_deg_s: f64,
    pub dt_s: f64,
}

impl Default for TrajectorySection {
    fn default() -> Self {
        TrajectorySection {
            omega1_deg_s: 10.0,
            dt_s: 0.001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BandSection {
    pub theta_lo_deg: f64,
    pub theta_hi_deg: f64,
    /// Band-search sampling step.
    pub step_deg: f64,
    /// Deviation budget as a fraction of the generator scale.
    pub budget_per_scale: f64,
    /// Sampling step of the exported path CSV.
    pub path_step_deg: f64,
}

impl Default for BandSection {
    fn default() -> Self {
        BandSection {
            theta_lo_deg: 0.0,
            theta_hi_deg: 360.0,
            step_deg: 0.01,
            budget_per_scale: 0.0164,
            path_step_deg: 0.1,
        }
    }
}

impl RunConfig {
    pub fn hoeckens_params(&self) -> HoeckensParams {
        HoeckensParams {
            crank: self.hoeckens.crank_mm,
            pivot_x: self.hoeckens.pivot_offset_mm,
            rod: self.hoeckens.rod_mm,
        }
    }

    pub fn finger_config(&self) -> FingerConfig {
        FingerConfig {
            hoeckens: self.hoeckens_params(),
            l_ag: self.finger.l_ag_mm,
            l_gd: self.finger.l_gd_mm,
            q2_deg: self.finger.q2_deg,
            q3_deg: self.finger.q3_deg,
            delta_h1: self.finger.delta_h1_mm,
            delta_h2: self.finger.delta_h2_mm,
            delta_theta1_max_deg: self.finger.delta_theta1_max_deg,
            l_di: self.finger.l_di_mm,
            h_max: self.finger.h_max_mm,
            h_min: self.finger.h_min_mm,
            stroke_lo_deg: self.finger.stroke_lo_deg,
            stroke_hi_deg: self.finger.stroke_hi_deg,
        }
    }

    pub fn spring_params(&self) -> SpringParams {
        SpringParams {
            k1: self.springs.k1_nmm_per_rad,
            k2: self.springs.k2_n_per_mm,
            pretension_deg: self.springs.pretension_deg,
            attach_r: self.springs.attach_r_mm,
        }
    }

    pub fn scan_spec(&self) -> ScanSpec {
        ScanSpec {
            hoeckens: self.hoeckens_params(),
            l_ag_min: self.scan.l_ag_min_mm,
            l_ag_max: self.scan.l_ag_max_mm,
            l_gd_min: self.scan.l_gd_min_mm,
            l_gd_max: self.scan.l_gd_max_mm,
            resolution: self.scan.resolution_mm,
            trace: TraceSpec {
                lo_deg: self.finger.stroke_lo_deg,
                hi_deg: self.finger.stroke_hi_deg,
                step_deg: self.scan.trace_step_deg,
            },
            margin: self.scan.margin_mm,
        }
    }

    /// Loads and validates a TOML config file.
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema_version {} (expected {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        self.finger_config()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(())
    }

    /// Hex SHA-256 of the resolved config (canonical JSON).
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<MechanismError> for CliError {
    fn from(e: MechanismError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<HoeckensError> for CliError {
    fn from(e: HoeckensError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<ForceError> for CliError {
    fn from(e: ForceError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

/// Kinematics and design tools for a linkage-driven underactuated finger.
#[derive(Debug, Parser)]
#[command(name = "hoeckens-finger", version, about)]
pub struct Cli {
    /// TOML config file; defaults apply when omitted
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for artifacts
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Also write SVG plots
    #[arg(long, global = true)]
    pub svg: bool,
    /// Disable the scan result cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Omit timestamps from SVGs so bytes depend only on the data
    #[arg(long, global = true)]
    pub deterministic_svg: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace the generator path and report its near-linear band
    HoeckensPath {
        /// Crank angle range start, degrees
        #[arg(long)]
        theta_lo: Option<f64>,
        /// Crank angle range end, degrees
        #[arg(long)]
        theta_hi: Option<f64>,
        /// Path CSV sampling step, degrees
        #[arg(long)]
        step: Option<f64>,
    },
    /// Scan push-chain link lengths for feasibility and sweep
    Scan,
    /// Simulate a press stroke and export the fingertip trajectory
    Trajectory {
        /// Crank rate, degrees per second
        #[arg(long)]
        omega1: Option<f64>,
        /// Time step, seconds
        #[arg(long)]
        dt: Option<f64>,
        /// Disconnect the push chain (phalanges stay vertical)
        #[arg(long)]
        no_push: bool,
    },
    /// Fingertip force surfaces at one or more crank angles
    Force {
        /// Crank angle(s) to evaluate, degrees; repeatable
        #[arg(long = "theta1")]
        theta1: Vec<f64>,
    },
    /// Rod-to-push-angle sweep amplification over the stroke
    Amplification,
}

/// Run description written next to the artifacts.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config_path: Option<String>,
    pub config_hash: String,
    /// Artifact file names inside the output directory, sorted.
    pub outputs: Vec<String>,
    pub cache_hit: bool,
    pub wall_ms: u128,
}

struct Artifacts {
    dir: PathBuf,
    written: Vec<String>,
}

impl Artifacts {
    fn new(dir: &Path) -> Result<Artifacts, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Artifacts {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(name.to_string());
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let started = std::time::Instant::now();
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    config.validate()?;
    let mut artifacts = Artifacts::new(&cli.out)?;
    let mut cache_hit = false;

    let command_name = match &cli.command {
        Command::HoeckensPath { .. } => "hoeckens-path",
        Command::Scan => "scan",
        Command::Trajectory { .. } => "trajectory",
        Command::Force { .. } => "force",
        Command::Amplification => "amplification",
    };

    match &cli.command {
        Command::HoeckensPath {
            theta_lo,
            theta_hi,
            step,
        } => cmd_hoeckens_path(&config, cli, *theta_lo, *theta_hi, *step, &mut artifacts)?,
        Command::Scan => cache_hit = cmd_scan(&config, cli, &mut artifacts)?,
        Command::Trajectory { omega1, dt, no_push } => {
            cmd_trajectory(&config, cli, *omega1, *dt, !*no_push, &mut artifacts)?
        }
        Command::Force { theta1 } => cmd_force(&config, cli, theta1, &mut artifacts)?,
        Command::Amplification => cmd_amplification(&config)?,
    }

    let mut outputs = artifacts.written.clone();
    outputs.sort();
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command_name.to_string(),
        config_path: cli.config.as_ref().map(|p| p.display().to_string()),
        config_hash: config.hash(),
        outputs,
        cache_hit,
        wall_ms: started.elapsed().as_millis(),
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    let path = cli.out.join("manifest.json");
    std::fs::write(&path, manifest_json)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn cmd_hoeckens_path(
    config: &RunConfig,
    cli: &Cli,
    theta_lo: Option<f64>,
    theta_hi: Option<f64>,
    step: Option<f64>,
    artifacts: &mut Artifacts,
) -> Result<(), CliError> {
    let params = config.hoeckens_params();
    let band_cfg = &config.band;
    let lo = theta_lo.unwrap_or(band_cfg.theta_lo_deg);
    let hi = theta_hi.unwrap_or(band_cfg.theta_hi_deg);
    let path_step = step.unwrap_or(band_cfg.path_step_deg);

    let samples = hoeckens::trace(&params, lo, hi, path_step)?;
    let mut csv = String::from("theta1_deg,x_mm,y_mm\n");
    for s in &samples {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt6(s.theta1_deg),
            fmt6(s.d.x),
            fmt6(s.d.y)
        ));
    }
    artifacts.write("hoeckens_path.csv", &csv)?;

    let budget = band_cfg.budget_per_scale * params.scale();
    match hoeckens::linear_band(&params, lo, hi, band_cfg.step_deg, budget) {
        Ok(band) => println!(
            "linear band: [{}, {}] deg (width {}), max deviation {} mm = {} per unit scale",
            fmt6(band.theta_lo_deg),
            fmt6(band.theta_hi_deg),
            fmt6(band.theta_hi_deg - band.theta_lo_deg),
            fmt6(band.max_deviation),
            fmt6(band.max_deviation / params.scale()),
        ),
        Err(HoeckensError::EmptyBand { budget }) => {
            println!("linear band: none within budget {} mm", fmt6(budget))
        }
        Err(e) => return Err(e.into()),
    }

    if cli.svg {
        let pts: Vec<Point2> = samples.iter().map(|s| s.d).collect();
        let chart = svg::polyline_chart(
            "generator path",
            "x (mm)",
            "y (mm)",
            &[("D", &pts)],
            cli.deterministic_svg,
        );
        artifacts.write("hoeckens_path.svg", &chart)?;
    }
    Ok(())
}

fn cmd_scan(config: &RunConfig, cli: &Cli, artifacts: &mut Artifacts) -> Result<bool, CliError> {
    let spec = config.scan_spec();
    let hash = optimize::spec_hash(&spec);
    let cache_name = format!("scan_{}.csv", &hash[..16]);
    let cache_path = cli.out.join(".cache").join(&cache_name);

    if !cli.no_cache && !cli.svg {
        if let Ok(bytes) = std::fs::read_to_string(&cache_path) {
            artifacts.write("scan.csv", &bytes)?;
            println!("cache hit: {}", cache_path.display());
            println!("summary skipped (cached result)");
            return Ok(true);
        }
    }

    let result = optimize::scan(&spec)?;
    let csv = result.to_csv();
    artifacts.write("scan.csv", &csv)?;
    if !cli.no_cache {
        let dir = cli.out.join(".cache");
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
        std::fs::write(&cache_path, &csv)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", cache_path.display())))?;
    }

    println!(
        "feasible cells: {}/{}",
        result.feasible_count(),
        result.cells.len()
    );
    match result.argmax() {
        Some(best) => println!(
            "best cell: L_AG={} L_DG={} delta_theta_max={} deg",
            fmt6(best.l_ag),
            fmt6(best.l_gd),
            fmt6(best.delta_theta_max_deg.unwrap()),
        ),
        None => println!("best cell: none feasible"),
    }
    match optimize::sensitivity(&result) {
        Ok(s) => println!(
            "sensitivity: r={} slope_AG={} deg/mm slope_DG(<60mm)={} deg/mm incr(30mm)={} deg",
            fmt6(s.pearson_r),
            fmt6(s.slope_ag),
            fmt6(s.slope_gd_below_60),
            fmt6(s.incr_30mm_deg),
        ),
        Err(ScanError::InsufficientData { n }) => {
            println!("sensitivity: insufficient data ({n} feasible cells)")
        }
        Err(e) => return Err(e.into()),
    }

    if cli.svg {
        let values: Vec<Option<f64>> = result
            .cells
            .iter()
            .map(|c| if c.feasible() { c.delta_theta_max_deg } else { None })
            .collect();
        let chart = svg::heatmap(
            "push-angle sweep over link lengths",
            "L_AG (mm)",
            "L_DG (mm)",
            &result.l_ag_values,
            &result.l_gd_values,
            &values,
            cli.deterministic_svg,
        );
        artifacts.write("scan.svg", &chart)?;
    }
    Ok(false)
}

fn cmd_trajectory(
    config: &RunConfig,
    cli: &Cli,
    omega1: Option<f64>,
    dt: Option<f64>,
    pushed: bool,
    artifacts: &mut Artifacts,
) -> Result<(), CliError> {
    let cfg = config.finger_config();
    let omega1 = omega1.unwrap_or(config.trajectory.omega1_deg_s);
    let dt = dt.unwrap_or(config.trajectory.dt_s);
    let traj = mechanism::simulate(&cfg, omega1, dt, pushed)?;
    artifacts.write("trajectory.csv", &traj.to_csv())?;

    match traj.trigger_index {
        Some(i) => {
            let s = &traj.samples[i];
            println!(
                "trigger: t={} s theta1={} deg",
                fmt6(s.t),
                fmt6(s.theta1_deg)
            );
        }
        None => println!("trigger: never (phalanges stay vertical)"),
    }
    let last = traj.samples.last().expect("nonempty trajectory");
    println!(
        "final fingertip: ({}, {}) mm, posture {} deg, stage {}",
        fmt6(last.p.x),
        fmt6(last.p.y),
        fmt6(last.posture_deg),
        last.stage
    );
    let area = mechanism::workspace_area_of(&cfg, 0.01, pushed)?;
    println!("swept area: {} mm^2", fmt6(area));

    if cli.svg {
        let pts: Vec<Point2> = traj.samples.iter().map(|s| s.p).collect();
        let chart = svg::polyline_chart(
            "fingertip path over the press stroke",
            "x (mm)",
            "y (mm)",
            &[("fingertip", &pts)],
            cli.deterministic_svg,
        );
        artifacts.write("trajectory.svg", &chart)?;
    }
    Ok(())
}

fn cmd_force(
    config: &RunConfig,
    cli: &Cli,
    theta1: &[f64],
    artifacts: &mut Artifacts,
) -> Result<(), CliError> {
    let cfg = config.finger_config();
    let springs = config.spring_params();
    let sec = &config.force;
    let thetas: Vec<f64> = if theta1.is_empty() {
        sec.theta1_deg.clone()
    } else {
        theta1.to_vec()
    };
    if thetas.is_empty() {
        return Err(CliError::Config(
            "force: the crank angle list is empty".to_string(),
        ));
    }
    let p_values = grid(sec.p_min_w, sec.p_max_w, sec.p_steps)
        .ok_or_else(|| CliError::Config("force: bad power grid".to_string()))?;
    let r_values = grid(sec.r_min_mm, sec.r_max_mm, sec.r_steps)
        .ok_or_else(|| CliError::Config("force: bad lever-radius grid".to_string()))?;

    let mut surfaces = Vec::new();
    for &th in &thetas {
        let surface =
            force::force_surface(&cfg, &springs, th, &p_values, &r_values, sec.omega1_deg_s)?;
        artifacts.write(&format!("force_theta1_{}.csv", fmt6(th)), &surface.to_csv())?;
        if cli.svg {
            let chart = svg::heatmap(
                &format!("fingertip force at theta1 = {} deg", fmt6(th)),
                "P_press (W)",
                "r (mm)",
                &surface.p_values,
                &surface.r_values,
                &surface.cells,
                cli.deterministic_svg,
            );
            artifacts.write(&format!("force_theta1_{}.svg", fmt6(th)), &chart)?;
        }
        surfaces.push(surface);
    }

    let finite_min = |s: &force::ForceSurface| {
        s.cells
            .iter()
            .flatten()
            .fold(f64::INFINITY, |a, &v| a.min(v))
    };
    let global_min = surfaces.iter().map(finite_min).fold(f64::INFINITY, f64::min);
    println!(
        "all forces positive: {} (min {} N)",
        if global_min > 0.0 { "yes" } else { "NO" },
        fmt6(global_min)
    );
    for w in surfaces.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mut min_gap = f64::INFINITY;
        for (ca, cb) in a.cells.iter().zip(&b.cells) {
            if let (Some(fa), Some(fb)) = (ca, cb) {
                min_gap = min_gap.min(fb - fa);
            }
        }
        println!(
            "dominance F(theta1={}) - F(theta1={}): min gap {} N ({})",
            fmt6(b.theta1_deg),
            fmt6(a.theta1_deg),
            fmt6(min_gap),
            if min_gap > 0.0 { "holds" } else { "violated" },
        );
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, steps: usize) -> Option<Vec<f64>> {
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return None;
    }
    if steps == 1 {
        return Some(vec![lo]);
    }
    let step = (hi - lo) / (steps - 1) as f64;
    Some((0..steps).map(|i| lo + step * i as f64).collect())
}

fn cmd_amplification(config: &RunConfig) -> Result<(), CliError> {
    let cfg = config.finger_config();
    let amp = mechanism::rocker_amplification(&cfg, config.scan.trace_step_deg)?;
    println!("input sweep: {} deg", fmt6(amp.input_sweep_deg));
    println!("output sweep: {} deg", fmt6(amp.output_sweep_deg));
    println!("amplification: {}", fmt6(amp.ratio));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_parses_to_defaults() {
        let cfg: RunConfig = toml::from_str("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(toml::from_str::<RunConfig>("nonsense = 1").is_err());
        assert!(toml::from_str::<RunConfig>("[finger]\nl_agg_mm = 4").is_err());
    }

    #[test]
    fn wrong_schema_rejected() {
        let cfg: RunConfig = toml::from_str("schema_version = 99").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_hash_is_stable() {
        let a = RunConfig::default().hash();
        let b = RunConfig::default().hash();
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
    }
}
