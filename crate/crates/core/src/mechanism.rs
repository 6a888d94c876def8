//! The complete finger mechanism.
//!
//! The Hoecken generator's output point `D` doubles as the moving pivot of a
//! push chain: a frame link of length `l_ag` from the origin and a coupler of
//! length `l_gd` from `D` meet at the knee `G` (the lower of the two circle
//! intersections). The inclination `psi` of segment `GD`, measured from
//! vertical, drives the phalange assembly: while `psi` stays above the
//! stopper angle `q2` the phalanges hang vertical; once the press stroke
//! brings `psi` below `q2` the assembly rotates by `q2 - psi`, capped at
//! `delta_theta1_max`.
//!
//! Heights `h` are the distance from the frame top to the fingertip base:
//! `h = h_max` at rest, and pressing lifts `D` so `h = h_max - rise`.

use crate::geometry::{self, CircleIntersection, GeometryError, Point2};
use crate::hoeckens::{self, HoeckensError, HoeckensParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Full geometric description of the finger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FingerConfig {
    pub hoeckens: HoeckensParams,
    /// Frame link length from the crank pivot to the knee `G`.
    pub l_ag: f64,
    /// Coupler length from the knee `G` to the path point `D`.
    pub l_gd: f64,
    /// Stopper angle: push angle at which phalange rotation engages, degrees.
    pub q2_deg: f64,
    /// Stopper angle between proximal and distal phalange, degrees. The two
    /// phalanges move as one rigid body until an external contact folds the
    /// distal one; the free-motion model here never folds it.
    pub q3_deg: f64,
    /// Press displacement at which rotation triggers, millimetres.
    pub delta_h1: f64,
    /// Press displacement at which rotation saturates, millimetres.
    pub delta_h2: f64,
    /// Rotation cap for the phalange assembly, degrees.
    pub delta_theta1_max_deg: f64,
    /// Distal phalange length (base joint to fingertip), millimetres.
    pub l_di: f64,
    /// Fingertip-base height at rest, millimetres.
    pub h_max: f64,
    /// Lowest admissible fingertip-base height, millimetres.
    pub h_min: f64,
    /// Crank angle at the start of the press stroke, degrees.
    pub stroke_lo_deg: f64,
    /// Crank angle at the end of the press stroke, degrees.
    pub stroke_hi_deg: f64,
}

impl Default for FingerConfig {
    fn default() -> Self {
        FingerConfig {
            hoeckens: HoeckensParams::standard(30.0),
            l_ag: 125.0,
            l_gd: 50.0,
            q2_deg: 81.5,
            q3_deg: 60.0,
            delta_h1: 19.0,
            delta_h2: 68.0,
            delta_theta1_max_deg: 35.0,
            l_di: 55.0,
            h_max: 180.0,
            h_min: 93.0,
            stroke_lo_deg: 68.51,
            stroke_hi_deg: 156.56,
        }
    }
}

impl FingerConfig {
    pub fn validate(&self) -> Result<(), MechanismError> {
        self.hoeckens.validate()?;
        let positive = [
            ("l_ag", self.l_ag),
            ("l_gd", self.l_gd),
            ("h_max", self.h_max),
        ];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(MechanismError::BadParameter {
                    name,
                    value: v,
                });
            }
        }
        let nonneg = [
            ("l_di", self.l_di),
            ("delta_h1", self.delta_h1),
            ("delta_h2", self.delta_h2),
            ("delta_theta1_max_deg", self.delta_theta1_max_deg),
        ];
        for (name, v) in nonneg {
            if !v.is_finite() || v < 0.0 {
                return Err(MechanismError::BadParameter {
                    name,
                    value: v,
                });
            }
        }
        if self.delta_h2 < self.delta_h1 {
            return Err(MechanismError::BadParameter {
                name: "delta_h2",
                value: self.delta_h2,
            });
        }
        let finite = [
            ("h_min", self.h_min),
            ("stroke_lo_deg", self.stroke_lo_deg),
            ("stroke_hi_deg", self.stroke_hi_deg),
            ("q2_deg", self.q2_deg),
            ("q3_deg", self.q3_deg),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(MechanismError::BadParameter { name, value: v });
            }
        }
        if self.h_min >= self.h_max {
            return Err(MechanismError::BadParameter {
                name: "h_min",
                value: self.h_min,
            });
        }
        if self.stroke_lo_deg >= self.stroke_hi_deg {
            return Err(MechanismError::BadParameter {
                name: "stroke_lo_deg",
                value: self.stroke_lo_deg,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MechanismError {
    #[error(transparent)]
    Linkage(#[from] HoeckensError),
    #[error("push chain has no knee solution at theta1 = {theta1_deg} deg: {source}")]
    PushChain {
        theta1_deg: f64,
        source: GeometryError,
    },
    #[error("height {h} mm outside the admissible range [{lo}, {hi}] mm")]
    OutOfStroke { h: f64, lo: f64, hi: f64 },
    #[error("parameter {name} out of range: {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error("swept path is degenerate, no area enclosed")]
    DegeneratePath,
    #[error("could not invert press displacement {rise} mm to a crank angle")]
    InversionFailed { rise: f64 },
}

/// Deployment phase over the press stroke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MotionStage {
    /// Press displacement below `delta_h1`: phalanges hang vertical.
    IdleVertical,
    /// Rotation engaged, below the cap.
    Triggered,
    /// Rotation at the cap `delta_theta1_max`.
    FullyDeployed,
}

impl std::fmt::Display for MotionStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MotionStage::IdleVertical => "idle_vertical",
            MotionStage::Triggered => "triggered",
            MotionStage::FullyDeployed => "fully_deployed",
        })
    }
}

fn stage_for_rise(cfg: &FingerConfig, rise: f64) -> MotionStage {
    if rise < cfg.delta_h1 {
        MotionStage::IdleVertical
    } else if rise < cfg.delta_h2 {
        MotionStage::Triggered
    } else {
        MotionStage::FullyDeployed
    }
}

/// Solved pose of the push chain at one crank angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PushChainPose {
    /// Hoecken output point (moving pivot).
    pub d: Point2,
    /// Knee point (lower circle intersection).
    pub g: Point2,
    /// Push angle of segment `GD` from vertical, radians.
    pub psi: f64,
}

/// Solves the push chain at crank angle `theta1` (radians).
pub fn push_chain(cfg: &FingerConfig, theta1: f64) -> Result<PushChainPose, MechanismError> {
    let st = hoeckens::solve(&cfg.hoeckens, theta1)?;
    let inter = geometry::circle_intersection(Point2::new(0.0, 0.0), cfg.l_ag, st.d, cfg.l_gd)
        .map_err(|source| MechanismError::PushChain {
            theta1_deg: theta1.to_degrees(),
            source,
        })?;
    let g = match inter {
        CircleIntersection::Two(lo, _) => lo,
        CircleIntersection::Tangent(p) => p,
    };
    Ok(PushChainPose {
        d: st.d,
        g,
        psi: geometry::push_angle(st.d, g),
    })
}

/// Push angle in degrees at a crank angle given in degrees.
pub fn push_angle_deg(cfg: &FingerConfig, theta1_deg: f64) -> Result<f64, MechanismError> {
    Ok(push_chain(cfg, theta1_deg.to_radians())?.psi.to_degrees())
}

/// Phalange rotation for a given push angle, degrees, clamped to
/// `[0, delta_theta1_max]`.
fn posture_from_psi_deg(cfg: &FingerConfig, psi_deg: f64) -> f64 {
    (cfg.q2_deg - psi_deg).clamp(0.0, cfg.delta_theta1_max_deg)
}

/// Press displacement (rise of `D` above its stroke-start height) at a crank
/// angle given in radians.
fn rise_at(cfg: &FingerConfig, theta1: f64) -> Result<f64, MechanismError> {
    let y0 = hoeckens::solve(&cfg.hoeckens, cfg.stroke_lo_deg.to_radians())?.d.y;
    Ok(hoeckens::solve(&cfg.hoeckens, theta1)?.d.y - y0)
}

/// Inverts a press displacement to a crank angle by bisection. The rise is
/// monotonic from the stroke start up to a crank angle of 270 deg, which
/// covers every admissible height.
fn theta1_for_rise(cfg: &FingerConfig, rise: f64) -> Result<f64, MechanismError> {
    let lo0 = cfg.stroke_lo_deg.to_radians();
    let hi0 = 270f64.to_radians();
    let f = |t: f64| -> Result<f64, MechanismError> { Ok(rise_at(cfg, t)? - rise) };
    let mut lo = lo0;
    let mut hi = hi0;
    let flo = f(lo)?;
    let fhi = f(hi)?;
    if flo > 1e-9 || fhi < -1e-9 {
        return Err(MechanismError::InversionFailed { rise });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Phalange rotation (degrees) and motion stage at a fingertip-base height
/// `h` in `[h_min, h_max]`.
pub fn phalange_posture(
    cfg: &FingerConfig,
    h: f64,
) -> Result<(f64, MotionStage), MechanismError> {
    cfg.validate()?;
    if !h.is_finite() || h < cfg.h_min || h > cfg.h_max {
        return Err(MechanismError::OutOfStroke {
            h,
            lo: cfg.h_min,
            hi: cfg.h_max,
        });
    }
    let rise = cfg.h_max - h;
    let theta1 = theta1_for_rise(cfg, rise)?;
    let psi_deg = push_chain(cfg, theta1)?.psi.to_degrees();
    Ok((posture_from_psi_deg(cfg, psi_deg), stage_for_rise(cfg, rise)))
}

/// Crank-to-push-angle sweep amplification over the press stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplification {
    /// Rod inclination sweep (input side), degrees.
    pub input_sweep_deg: f64,
    /// Push angle sweep (output side), degrees.
    pub output_sweep_deg: f64,
    /// Output over input.
    pub ratio: f64,
}

/// Sweeps the press stroke at `step_deg` and reports how much the push chain
/// amplifies the rod's angular travel.
pub fn rocker_amplification(
    cfg: &FingerConfig,
    step_deg: f64,
) -> Result<Amplification, MechanismError> {
    cfg.validate()?;
    let n = hoeckens_grid(cfg, step_deg)?;
    let mut th2 = (f64::INFINITY, f64::NEG_INFINITY);
    let mut psi = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let theta1_deg = cfg.stroke_lo_deg + (i as f64) * step_deg;
        let st = hoeckens::solve(&cfg.hoeckens, theta1_deg.to_radians())?;
        let pose = push_chain(cfg, theta1_deg.to_radians())?;
        th2 = (th2.0.min(st.theta2), th2.1.max(st.theta2));
        psi = (psi.0.min(pose.psi), psi.1.max(pose.psi));
    }
    let input = (th2.1 - th2.0).to_degrees();
    let output = (psi.1 - psi.0).to_degrees();
    Ok(Amplification {
        input_sweep_deg: input,
        output_sweep_deg: output,
        ratio: output / input,
    })
}

fn hoeckens_grid(cfg: &FingerConfig, step_deg: f64) -> Result<usize, MechanismError> {
    hoeckens::grid_len(cfg.stroke_lo_deg, cfg.stroke_hi_deg, step_deg).map_err(Into::into)
}

/// One time sample of a simulated press stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub theta1_deg: f64,
    /// Fingertip position.
    pub p: Point2,
    /// Fingertip velocity (central differences; one-sided at the ends).
    pub v: Point2,
    pub posture_deg: f64,
    pub stage: MotionStage,
}

/// A simulated press stroke.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    /// First sample with nonzero phalange rotation, if any.
    pub trigger_index: Option<usize>,
}

impl Trajectory {
    pub fn to_csv(&self) -> String {
        use crate::numfmt::fmt6;
        let mut s = String::from("t_s,theta1_deg,x_mm,y_mm,vx_mm_s,vy_mm_s,posture_deg,stage\n");
        for smp in &self.samples {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt6(smp.t),
                fmt6(smp.theta1_deg),
                fmt6(smp.p.x),
                fmt6(smp.p.y),
                fmt6(smp.v.x),
                fmt6(smp.v.y),
                fmt6(smp.posture_deg),
                smp.stage
            ));
        }
        s
    }
}

/// Fingertip position for a given path point and phalange rotation.
fn fingertip(cfg: &FingerConfig, d: Point2, posture_deg: f64) -> Point2 {
    let a = posture_deg.to_radians();
    Point2::new(d.x + cfg.l_di * a.sin(), d.y - cfg.l_di * a.cos())
}

/// Simulates a constant-rate press stroke.
///
/// `pushed` selects whether the push chain drives the phalanges; with it off
/// the phalanges stay vertical (the behaviour with the coupler removed).
/// Time samples are `i * dt`, so halving `dt` reproduces the shared instants
/// exactly.
pub fn simulate(
    cfg: &FingerConfig,
    omega1_deg_s: f64,
    dt: f64,
    pushed: bool,
) -> Result<Trajectory, MechanismError> {
    cfg.validate()?;
    if !omega1_deg_s.is_finite() || omega1_deg_s <= 0.0 {
        return Err(MechanismError::BadParameter {
            name: "omega1_deg_s",
            value: omega1_deg_s,
        });
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(MechanismError::BadParameter {
            name: "dt",
            value: dt,
        });
    }
    let duration = (cfg.stroke_hi_deg - cfg.stroke_lo_deg) / omega1_deg_s;
    let n = (duration / dt + 1e-9).floor() as usize + 1;
    let y0 = hoeckens::solve(&cfg.hoeckens, cfg.stroke_lo_deg.to_radians())?.d.y;

    let mut samples = Vec::with_capacity(n);
    let mut trigger_index = None;
    for i in 0..n {
        let t = (i as f64) * dt;
        let theta1_deg = cfg.stroke_lo_deg + omega1_deg_s * t;
        let theta1 = theta1_deg.to_radians();
        let (d, posture_deg) = if pushed {
            let pose = push_chain(cfg, theta1)?;
            (pose.d, posture_from_psi_deg(cfg, pose.psi.to_degrees()))
        } else {
            (hoeckens::solve(&cfg.hoeckens, theta1)?.d, 0.0)
        };
        if posture_deg > 0.0 && trigger_index.is_none() {
            trigger_index = Some(i);
        }
        let rise = d.y - y0;
        samples.push(TrajectorySample {
            t,
            theta1_deg,
            p: fingertip(cfg, d, posture_deg),
            v: Point2::new(0.0, 0.0),
            posture_deg,
            stage: stage_for_rise(cfg, rise),
        });
    }

    let n = samples.len();
    for i in 0..n {
        let (a, b, span) = if i == 0 {
            (0, 1.min(n - 1), dt)
        } else if i == n - 1 {
            (n - 2, n - 1, dt)
        } else {
            (i - 1, i + 1, 2.0 * dt)
        };
        let dp = samples[b].p - samples[a].p;
        samples[i].v = dp.scale(1.0 / span);
    }

    Ok(Trajectory {
        samples,
        trigger_index,
    })
}

/// Area swept by the fingertip path over the press stroke, in square
/// millimetres: the shoelace area of the deployed fingertip path, closed by
/// the chord from stroke end back to stroke start.
pub fn workspace_area(cfg: &FingerConfig, theta_step_deg: f64) -> Result<f64, MechanismError> {
    workspace_area_of(cfg, theta_step_deg, true)
}

/// Same as [`workspace_area`] but selecting whether the push chain drives
/// the phalanges (see [`simulate`]).
pub fn workspace_area_of(
    cfg: &FingerConfig,
    theta_step_deg: f64,
    pushed: bool,
) -> Result<f64, MechanismError> {
    cfg.validate()?;
    let n = hoeckens_grid(cfg, theta_step_deg)?;
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let theta1_deg = cfg.stroke_lo_deg + (i as f64) * theta_step_deg;
        let theta1 = theta1_deg.to_radians();
        let (d, posture_deg) = if pushed {
            let pose = push_chain(cfg, theta1)?;
            (pose.d, posture_from_psi_deg(cfg, pose.psi.to_degrees()))
        } else {
            (hoeckens::solve(&cfg.hoeckens, theta1)?.d, 0.0)
        };
        pts.push(fingertip(cfg, d, posture_deg));
    }
    geometry::shoelace_area(&pts).map_err(|_| MechanismError::DegeneratePath)
}
