//! Hoecken straight-line generator.
//!
//! A crank of length `crank` turns about the origin `A`. Its tip `B` carries
//! a rod of length `rod` that passes through the fixed guide pivot `C` at
//! `(pivot_x, 0)`; the rod's free end `D` traces the output path. Over part
//! of the crank revolution `D` moves along a nearly straight line, which is
//! what the finger mechanism exploits. The canonical proportions are
//! `pivot_x = 1.5 crank` and `rod = 6 crank`.
//!
//! Solving is closed-form: with `B = crank (cos t1, sin t1)`,
//! `D = C + (rod - |BC|) * (C - B) / |BC|`.

use crate::geometry::{Point2, EPS_GEO};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Link lengths of the generator, in millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoeckensParams {
    /// Crank length `|AB|`; also the scale unit of the mechanism.
    pub crank: f64,
    /// Distance from the crank pivot to the rod guide pivot `C`.
    pub pivot_x: f64,
    /// Total rod length `|BD|`.
    pub rod: f64,
}

impl HoeckensParams {
    /// Canonical proportions `(l, 1.5 l, 6 l)` for a given scale `l`.
    pub fn standard(l: f64) -> Self {
        HoeckensParams {
            crank: l,
            pivot_x: 1.5 * l,
            rod: 6.0 * l,
        }
    }

    /// The scale unit (crank length).
    pub fn scale(&self) -> f64 {
        self.crank
    }

    /// True when the lengths match the canonical proportions to 1e-9
    /// relative tolerance.
    pub fn is_standard(&self) -> bool {
        let l = self.crank;
        l > 0.0
            && (self.pivot_x - 1.5 * l).abs() <= 1e-9 * l
            && (self.rod - 6.0 * l).abs() <= 1e-9 * l
    }

    pub fn validate(&self) -> Result<(), HoeckensError> {
        for (name, v) in [
            ("crank", self.crank),
            ("pivot_x", self.pivot_x),
            ("rod", self.rod),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(HoeckensError::BadLength {
                    name,
                    value: v,
                });
            }
        }
        Ok(())
    }
}

impl Default for HoeckensParams {
    fn default() -> Self {
        HoeckensParams::standard(30.0)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum HoeckensError {
    #[error("link length {name} must be positive and finite, got {value}")]
    BadLength { name: &'static str, value: f64 },
    #[error("crank tip coincides with the guide pivot at theta1 = {theta1_deg} deg")]
    Singular { theta1_deg: f64 },
    #[error("rod ({rod} mm) shorter than crank-tip/guide distance {coupler} mm at theta1 = {theta1_deg} deg")]
    RodTooShort {
        theta1_deg: f64,
        coupler: f64,
        rod: f64,
    },
    #[error("sampling step must be positive and finite, got {step}")]
    BadStep { step: f64 },
    #[error("sampling range [{lo}, {hi}] deg is empty or not finite")]
    BadRange { lo: f64, hi: f64 },
    #[error("no window of 3 or more samples stays within the deviation budget {budget} mm")]
    EmptyBand { budget: f64 },
}

/// One solved pose of the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoeckensState {
    /// Crank angle, radians.
    pub theta1: f64,
    /// Rod inclination (direction from `B` toward `D`), radians.
    pub theta2: f64,
    /// Distance `|BC|` from crank tip to the guide pivot.
    pub coupler: f64,
    /// Crank tip.
    pub b: Point2,
    /// Rod end point (the output).
    pub d: Point2,
}

/// Solves the generator pose at crank angle `theta1` (radians).
pub fn solve(p: &HoeckensParams, theta1: f64) -> Result<HoeckensState, HoeckensError> {
    p.validate()?;
    let b = Point2::new(p.crank * theta1.cos(), p.crank * theta1.sin());
    let c = Point2::new(p.pivot_x, 0.0);
    let bc = c - b;
    let coupler = bc.norm();
    if coupler < EPS_GEO {
        return Err(HoeckensError::Singular {
            theta1_deg: theta1.to_degrees(),
        });
    }
    if coupler >= p.rod {
        return Err(HoeckensError::RodTooShort {
            theta1_deg: theta1.to_degrees(),
            coupler,
            rod: p.rod,
        });
    }
    let u = bc.scale(1.0 / coupler);
    let d = c + u.scale(p.rod - coupler);
    Ok(HoeckensState {
        theta1,
        theta2: u.y.atan2(u.x),
        coupler,
        b,
        d,
    })
}

/// One sample of a traced path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub theta1_deg: f64,
    pub d: Point2,
}

/// Number of samples for an inclusive grid `lo + i * step`.
pub(crate) fn grid_len(lo: f64, hi: f64, step: f64) -> Result<usize, HoeckensError> {
    if !step.is_finite() || step <= 0.0 {
        return Err(HoeckensError::BadStep { step });
    }
    if !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(HoeckensError::BadRange { lo, hi });
    }
    // small forgiveness so that ranges meant to end on a grid point do
    Ok(((hi - lo) / step + 1e-9).floor() as usize + 1)
}

/// Traces the output point `D` over `theta1` in `[lo_deg, hi_deg]` with the
/// given step, all in degrees. Sample angles are generated as
/// `lo_deg + i * step_deg`, so refining the step reproduces shared angles
/// (and therefore shared points) exactly.
pub fn trace(
    p: &HoeckensParams,
    lo_deg: f64,
    hi_deg: f64,
    step_deg: f64,
) -> Result<Vec<TraceSample>, HoeckensError> {
    let n = grid_len(lo_deg, hi_deg, step_deg)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let theta1_deg = lo_deg + (i as f64) * step_deg;
        let st = solve(p, theta1_deg.to_radians())?;
        out.push(TraceSample {
            theta1_deg,
            d: st.d,
        });
    }
    Ok(out)
}

/// The widest sampled crank-angle window whose path points stay within a
/// deviation budget of a straight line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearBand {
    pub theta_lo_deg: f64,
    pub theta_hi_deg: f64,
    /// Largest orthogonal deviation from the fitted line inside the window.
    pub max_deviation: f64,
    /// Centroid of the window's points (a point on the fitted line).
    pub centroid: Point2,
    /// Unit direction of the fitted line.
    pub direction: Point2,
}

/// Total-least-squares line fit over a slice of points, via prefix sums.
struct TlsAccum {
    sx: Vec<f64>,
    sy: Vec<f64>,
    sxx: Vec<f64>,
    syy: Vec<f64>,
    sxy: Vec<f64>,
}

impl TlsAccum {
    fn new(pts: &[Point2]) -> Self {
        let n = pts.len();
        let mut a = TlsAccum {
            sx: vec![0.0; n + 1],
            sy: vec![0.0; n + 1],
            sxx: vec![0.0; n + 1],
            syy: vec![0.0; n + 1],
            sxy: vec![0.0; n + 1],
        };
        for (i, p) in pts.iter().enumerate() {
            a.sx[i + 1] = a.sx[i] + p.x;
            a.sy[i + 1] = a.sy[i] + p.y;
            a.sxx[i + 1] = a.sxx[i] + p.x * p.x;
            a.syy[i + 1] = a.syy[i] + p.y * p.y;
            a.sxy[i + 1] = a.sxy[i] + p.x * p.y;
        }
        a
    }

    /// Fitted (centroid, unit direction) for the inclusive window `[i, j]`.
    fn fit(&self, i: usize, j: usize) -> (Point2, Point2) {
        let n = (j - i + 1) as f64;
        let mx = (self.sx[j + 1] - self.sx[i]) / n;
        let my = (self.sy[j + 1] - self.sy[i]) / n;
        let cxx = (self.sxx[j + 1] - self.sxx[i]) / n - mx * mx;
        let cyy = (self.syy[j + 1] - self.syy[i]) / n - my * my;
        let cxy = (self.sxy[j + 1] - self.sxy[i]) / n - mx * my;
        // principal axis of the 2x2 covariance
        let ang = 0.5 * (2.0 * cxy).atan2(cxx - cyy);
        (
            Point2::new(mx, my),
            Point2::new(ang.cos(), ang.sin()),
        )
    }
}

/// Max orthogonal deviation of `pts[i..=j]` from the TLS line of the same
/// window; bails out early past `limit` (returns the first excess).
fn window_deviation(
    pts: &[Point2],
    acc: &TlsAccum,
    i: usize,
    j: usize,
    limit: f64,
) -> (f64, Point2, Point2) {
    let (c, dir) = acc.fit(i, j);
    let nx = -dir.y;
    let ny = dir.x;
    let mut worst = 0.0f64;
    for p in &pts[i..=j] {
        let dev = ((p.x - c.x) * nx + (p.y - c.y) * ny).abs();
        if dev > worst {
            worst = dev;
            if worst > limit {
                break;
            }
        }
    }
    (worst, c, dir)
}

/// Finds the widest contiguous crank-angle window (3 samples minimum) whose
/// traced points deviate from their total-least-squares line by at most
/// `budget` millimetres.
///
/// The search runs a two-pointer sweep on a coarsened grid (about 0.2 deg
/// stride) and then extends both window ends at full resolution, which keeps
/// the default 0.01 deg scan well under a second. Ties go to the earliest
/// window.
pub fn linear_band(
    p: &HoeckensParams,
    lo_deg: f64,
    hi_deg: f64,
    step_deg: f64,
    budget: f64,
) -> Result<LinearBand, HoeckensError> {
    if !budget.is_finite() || budget < 0.0 {
        return Err(HoeckensError::EmptyBand { budget });
    }
    let samples = trace(p, lo_deg, hi_deg, step_deg)?;
    let pts: Vec<Point2> = samples.iter().map(|s| s.d).collect();
    let acc = TlsAccum::new(&pts);
    let n = pts.len();
    if n < 3 {
        return Err(HoeckensError::EmptyBand { budget });
    }

    let fits = |i: usize, j: usize| window_deviation(&pts, &acc, i, j, budget).0 <= budget;

    // pass 1: two-pointer on a coarse stride
    let stride = ((0.2 / step_deg).round() as usize).max(1);
    let coarse: Vec<usize> = (0..n).step_by(stride).collect();
    let mut best: Option<(usize, usize)> = None;
    if coarse.len() >= 3 {
        let mut lo = 0usize;
        for hi in 2..coarse.len() {
            while lo + 2 <= hi && !fits(coarse[lo], coarse[hi]) {
                lo += 1;
            }
            if lo + 2 <= hi {
                let cand = (coarse[lo], coarse[hi]);
                if best.is_none_or(|(a, b)| cand.1 - cand.0 > b - a) {
                    best = Some(cand);
                }
            }
        }
    }

    // pass 2 (only if the coarse grid found nothing): full-resolution sweep;
    // any surviving window is shorter than two strides, so this stays cheap
    if best.is_none() {
        let mut lo = 0usize;
        for hi in 2..n {
            while lo + 2 <= hi && !fits(lo, hi) {
                lo += 1;
            }
            if lo + 2 <= hi {
                let cand = (lo, hi);
                if best.is_none_or(|(a, b)| cand.1 - cand.0 > b - a) {
                    best = Some(cand);
                }
            }
        }
    }

    let (mut i, mut j) = best.ok_or(HoeckensError::EmptyBand { budget })?;

    // pass 3: grow to full resolution, right end first, then left
    while j + 1 < n && fits(i, j + 1) {
        j += 1;
    }
    while i > 0 && fits(i - 1, j) {
        i -= 1;
    }

    let (max_deviation, centroid, direction) = window_deviation(&pts, &acc, i, j, f64::INFINITY);
    Ok(LinearBand {
        theta_lo_deg: samples[i].theta1_deg,
        theta_hi_deg: samples[j].theta1_deg,
        max_deviation,
        centroid,
        direction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_scale_pose_at_zero() {
        let p = HoeckensParams::standard(1.0);
        let st = solve(&p, 0.0).unwrap();
        assert!((st.coupler - 0.5).abs() < 1e-15);
        assert!((st.d.x - 7.0).abs() < 1e-12 && st.d.y.abs() < 1e-12);
    }

    #[test]
    fn half_turn_lands_on_axis() {
        let p = HoeckensParams::standard(30.0);
        let st = solve(&p, std::f64::consts::PI).unwrap();
        assert!((st.d.x - 150.0).abs() < 1e-9);
        assert!(st.d.y.abs() < 1e-9);
    }

    #[test]
    fn trace_counts_inclusive_grid() {
        let p = HoeckensParams::default();
        let t = trace(&p, 68.51, 156.56, 0.5).unwrap();
        assert_eq!(t.len(), 177);
        assert_eq!(t[0].theta1_deg, 68.51);
    }

    #[test]
    fn zero_budget_has_no_band() {
        let p = HoeckensParams::default();
        let e = linear_band(&p, 0.0, 360.0, 1.0, 0.0).unwrap_err();
        assert!(matches!(e, HoeckensError::EmptyBand { .. }));
    }
}
