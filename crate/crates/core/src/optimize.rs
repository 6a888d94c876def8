//! Design-space scan for the push-chain link lengths.
//!
//! For every `(l_ag, l_gd)` cell of a rectangular grid the scan screens
//! feasibility along the traced press-stroke path and, when feasible,
//! computes the push-angle sweep `delta_theta_max`. Feasibility means the
//! two-circle assembly exists at every path sample (the Grashof-type
//! inequality `|l_ag - l_gd| <= |AD| <= l_ag + l_gd`) and the knee stays
//! inside the workspace margin (`G_y >= D_y - margin`). Sweeps beyond 180
//! degrees indicate a branch jump and mark the cell infeasible too.
//!
//! The scan is a pure function of its spec; results are hashed for caching.

use crate::geometry::{self, CircleIntersection, Point2};
use crate::hoeckens::{self, HoeckensError, HoeckensParams};
use crate::numfmt::fmt6;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Press-stroke sampling for feasibility screening and sweep evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSpec {
    pub lo_deg: f64,
    pub hi_deg: f64,
    pub step_deg: f64,
}

impl Default for TraceSpec {
    fn default() -> Self {
        TraceSpec {
            lo_deg: 68.51,
            hi_deg: 156.56,
            step_deg: 0.5,
        }
    }
}

/// Grid scan specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub hoeckens: HoeckensParams,
    pub l_ag_min: f64,
    pub l_ag_max: f64,
    pub l_gd_min: f64,
    pub l_gd_max: f64,
    /// Grid pitch in millimetres, identical on both axes.
    pub resolution: f64,
    pub trace: TraceSpec,
    /// Knee workspace margin in millimetres.
    pub margin: f64,
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec {
            hoeckens: HoeckensParams::default(),
            l_ag_min: 30.0,
            l_ag_max: 180.0,
            l_gd_min: 30.0,
            l_gd_max: 180.0,
            resolution: 1.0,
            trace: TraceSpec::default(),
            margin: 45.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ScanError {
    #[error(transparent)]
    Linkage(#[from] HoeckensError),
    #[error("scan spec field {name} out of range: {value}")]
    BadSpec { name: &'static str, value: f64 },
    #[error("cell (l_ag = {l_ag}, l_gd = {l_gd}) is infeasible, no sweep defined")]
    InfeasibleCell { l_ag: f64, l_gd: f64 },
    #[error("not enough feasible cells ({n}) for sensitivity statistics")]
    InsufficientData { n: usize },
}

/// Why a cell was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Infeasibility {
    /// Assembly inequality fails first at this path sample.
    Grashof { theta1_deg: f64, d: f64 },
    /// Knee drops below the workspace margin first at this path sample.
    Workspace { theta1_deg: f64, gap: f64 },
    /// Push-angle sweep exceeds 180 degrees (branch jump).
    Discontinuity { sweep_deg: f64 },
}

impl Infeasibility {
    /// Compact token used in the CSV `reason` column.
    pub fn token(&self) -> String {
        match self {
            Infeasibility::Grashof { theta1_deg, .. } => {
                format!("grashof@theta1={}", fmt6(*theta1_deg))
            }
            Infeasibility::Workspace { theta1_deg, .. } => {
                format!("workspace@theta1={}", fmt6(*theta1_deg))
            }
            Infeasibility::Discontinuity { .. } => "discontinuity".to_string(),
        }
    }
}

/// One scanned grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub l_ag: f64,
    pub l_gd: f64,
    /// Push-angle sweep over the stroke; present whenever the assembly
    /// exists everywhere, even for discontinuity rejections.
    pub delta_theta_max_deg: Option<f64>,
    pub infeasibility: Option<Infeasibility>,
}

impl Cell {
    pub fn feasible(&self) -> bool {
        self.infeasibility.is_none()
    }
}

/// Scan output: cells in row-major order (`l_ag` outer, `l_gd` inner).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: ScanSpec,
    /// Hex SHA-256 of the canonical JSON spec; the cache key.
    pub spec_hash: String,
    pub l_ag_values: Vec<f64>,
    pub l_gd_values: Vec<f64>,
    pub cells: Vec<Cell>,
}

/// Hex SHA-256 of the canonical JSON serialization of a [`ScanSpec`].
pub fn spec_hash(spec: &ScanSpec) -> String {
    let json = serde_json::to_string(spec).expect("spec serializes");
    let mut h = Sha256::new();
    h.update(json.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Screens one cell along the trace. `None` means feasible; otherwise the
/// first violated constraint at the first violating sample is reported.
/// Checks run per sample in path order, Grashof before workspace.
pub fn check_feasibility(
    l_ag: f64,
    l_gd: f64,
    trace: &[hoeckens::TraceSample],
    margin: f64,
) -> Option<Infeasibility> {
    let a = Point2::new(0.0, 0.0);
    for s in trace {
        let d = s.d.dist(a);
        if d > l_ag + l_gd || d < (l_ag - l_gd).abs() {
            return Some(Infeasibility::Grashof {
                theta1_deg: s.theta1_deg,
                d,
            });
        }
        let g = knee(a, l_ag, s.d, l_gd);
        let gap = g.y - (s.d.y - margin);
        if gap < 0.0 {
            return Some(Infeasibility::Workspace {
                theta1_deg: s.theta1_deg,
                gap,
            });
        }
    }
    None
}

/// Lower knee point; callers must have screened the assembly inequality.
fn knee(a: Point2, l_ag: f64, d: Point2, l_gd: f64) -> Point2 {
    match geometry::circle_intersection(a, l_ag, d, l_gd) {
        Ok(CircleIntersection::Two(lo, _)) => lo,
        Ok(CircleIntersection::Tangent(p)) => p,
        Err(_) => unreachable!("assembly inequality screened before knee solve"),
    }
}

/// Push-angle sweep (max minus min, degrees) of a screened cell over the
/// trace.
pub fn delta_theta_sweep(l_ag: f64, l_gd: f64, trace: &[hoeckens::TraceSample]) -> f64 {
    let a = Point2::new(0.0, 0.0);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in trace {
        let g = knee(a, l_ag, s.d, l_gd);
        let psi = geometry::push_angle(s.d, g);
        lo = lo.min(psi);
        hi = hi.max(psi);
    }
    (hi - lo).to_degrees()
}

/// Runs the full grid scan.
pub fn scan(spec: &ScanSpec) -> Result<ScanResult, ScanError> {
    spec.hoeckens.validate()?;
    if !spec.resolution.is_finite() || spec.resolution <= 0.0 {
        return Err(ScanError::BadSpec {
            name: "resolution",
            value: spec.resolution,
        });
    }
    if spec.l_ag_max < spec.l_ag_min {
        return Err(ScanError::BadSpec {
            name: "l_ag_max",
            value: spec.l_ag_max,
        });
    }
    if spec.l_gd_max < spec.l_gd_min {
        return Err(ScanError::BadSpec {
            name: "l_gd_max",
            value: spec.l_gd_max,
        });
    }
    if !spec.margin.is_finite() || spec.margin < 0.0 {
        return Err(ScanError::BadSpec {
            name: "margin",
            value: spec.margin,
        });
    }
    let trace = hoeckens::trace(
        &spec.hoeckens,
        spec.trace.lo_deg,
        spec.trace.hi_deg,
        spec.trace.step_deg,
    )?;

    let l_ag_values = axis(spec.l_ag_min, spec.l_ag_max, spec.resolution)?;
    let l_gd_values = axis(spec.l_gd_min, spec.l_gd_max, spec.resolution)?;
    let mut cells = Vec::with_capacity(l_ag_values.len() * l_gd_values.len());
    for &l_ag in &l_ag_values {
        for &l_gd in &l_gd_values {
            let mut infeasibility = check_feasibility(l_ag, l_gd, &trace, spec.margin);
            let mut sweep = None;
            if infeasibility.is_none() {
                let s = delta_theta_sweep(l_ag, l_gd, &trace);
                sweep = Some(s);
                if s > 180.0 {
                    infeasibility = Some(Infeasibility::Discontinuity { sweep_deg: s });
                }
            }
            cells.push(Cell {
                l_ag,
                l_gd,
                delta_theta_max_deg: sweep,
                infeasibility,
            });
        }
    }
    Ok(ScanResult {
        spec: *spec,
        spec_hash: spec_hash(spec),
        l_ag_values,
        l_gd_values,
        cells,
    })
}

fn axis(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, ScanError> {
    let n = hoeckens::grid_len(lo, hi, step).map_err(|_| ScanError::BadSpec {
        name: "resolution",
        value: step,
    })?;
    Ok((0..n).map(|i| lo + (i as f64) * step).collect())
}

impl ScanResult {
    pub fn feasible_count(&self) -> usize {
        self.cells.iter().filter(|c| c.feasible()).count()
    }

    /// Feasible cell with the largest sweep; ties keep the first in
    /// row-major order. `None` when nothing is feasible.
    pub fn argmax(&self) -> Option<&Cell> {
        let mut best: Option<&Cell> = None;
        for c in self.cells.iter().filter(|c| c.feasible()) {
            let d = c.delta_theta_max_deg.expect("feasible cell has sweep");
            if best.is_none_or(|b| d > b.delta_theta_max_deg.unwrap()) {
                best = Some(c);
            }
        }
        best
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("L_AG_mm,L_DG_mm,feasible,delta_theta_max_deg,reason\n");
        for c in &self.cells {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt6(c.l_ag),
                fmt6(c.l_gd),
                c.feasible(),
                c.delta_theta_max_deg.map(fmt6).unwrap_or_default(),
                c.infeasibility.as_ref().map(|r| r.token()).unwrap_or_default(),
            ));
        }
        s
    }
}

/// Sensitivity of the sweep to the two link lengths over feasible cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sensitivity {
    /// Pearson correlation between `l_ag` and the sweep, pooled.
    pub pearson_r: f64,
    /// Least-squares slope of sweep versus `l_ag`, degrees per millimetre.
    pub slope_ag: f64,
    /// Least-squares slope of sweep versus `l_gd` restricted to
    /// `l_gd < 60 mm`, degrees per millimetre.
    pub slope_gd_below_60: f64,
    /// Sweep gain predicted for a 30 mm increase of `l_ag`.
    pub incr_30mm_deg: f64,
    pub n_feasible: usize,
    /// Mean sweep per `l_ag` grid value (feasible cells only).
    pub marginal_ag: Vec<(f64, f64)>,
    /// Mean sweep per `l_gd` grid value (feasible cells only).
    pub marginal_gd: Vec<(f64, f64)>,
}

/// Computes sensitivity statistics; needs at least 3 feasible cells.
pub fn sensitivity(result: &ScanResult) -> Result<Sensitivity, ScanError> {
    let feas: Vec<&Cell> = result.cells.iter().filter(|c| c.feasible()).collect();
    if feas.len() < 3 {
        return Err(ScanError::InsufficientData { n: feas.len() });
    }
    let pairs_ag: Vec<(f64, f64)> = feas
        .iter()
        .map(|c| (c.l_ag, c.delta_theta_max_deg.unwrap()))
        .collect();
    let pairs_gd: Vec<(f64, f64)> = feas
        .iter()
        .filter(|c| c.l_gd < 60.0)
        .map(|c| (c.l_gd, c.delta_theta_max_deg.unwrap()))
        .collect();
    if pairs_gd.len() < 3 {
        return Err(ScanError::InsufficientData { n: pairs_gd.len() });
    }
    let slope_ag = lsq_slope(&pairs_ag);
    let sens = Sensitivity {
        pearson_r: pearson(&pairs_ag),
        slope_ag,
        slope_gd_below_60: lsq_slope(&pairs_gd),
        incr_30mm_deg: slope_ag * 30.0,
        n_feasible: feas.len(),
        marginal_ag: marginal(&feas, |c| c.l_ag, &result.l_ag_values),
        marginal_gd: marginal(&feas, |c| c.l_gd, &result.l_gd_values),
    };
    Ok(sens)
}

fn mean(v: impl Iterator<Item = f64>, n: usize) -> f64 {
    v.sum::<f64>() / n as f64
}

fn pearson(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    let mx = mean(pairs.iter().map(|p| p.0), n);
    let my = mean(pairs.iter().map(|p| p.1), n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx.sqrt() * syy.sqrt())
}

fn lsq_slope(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    let mx = mean(pairs.iter().map(|p| p.0), n);
    let my = mean(pairs.iter().map(|p| p.1), n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

fn marginal(feas: &[&Cell], key: impl Fn(&Cell) -> f64, axis: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &v in axis {
        let vals: Vec<f64> = feas
            .iter()
            .filter(|c| key(c) == v)
            .map(|c| c.delta_theta_max_deg.unwrap())
            .collect();
        if !vals.is_empty() {
            out.push((v, vals.iter().sum::<f64>() / vals.len() as f64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_cells_rejected() {
        let spec = ScanSpec {
            l_ag_max: 20.0,
            ..ScanSpec::default()
        };
        assert!(matches!(scan(&spec), Err(ScanError::BadSpec { .. })));
    }

    #[test]
    fn scan_is_deterministic() {
        let spec = ScanSpec {
            l_ag_min: 120.0,
            l_ag_max: 130.0,
            l_gd_min: 45.0,
            l_gd_max: 55.0,
            resolution: 5.0,
            ..ScanSpec::default()
        };
        let a = scan(&spec).unwrap();
        let b = scan(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv(), b.to_csv());
    }
}
