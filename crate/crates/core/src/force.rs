//! Quasi-static fingertip force from a power balance.
//!
//! A press power `p_press` (watts) drives the crank at constant rate
//! `omega1`. Two return springs store part of it: a torsion spring of rate
//! `k1` wound up with the phalange deployment (plus a constant pretension)
//! and a translation spring of rate `k2` stretched by the horizontal travel
//! of its anchor on the coupler. What remains pushes the fingertip against
//! the grasped object with normal force `f_n` acting at lever radius `r`
//! on the deploying assembly while the assembly base also translates.
//!
//! Normalizing the balance by the crank rate gives, per crank radian,
//!
//! `p_press * 1000 / omega1 = k1 * w1 + k2 * dx1 * h' + f_n * (f' + r g')`
//!
//! with the three kinematic coefficients (all per crank radian):
//!
//! * `f'` - translation speed of the assembly base `D`,
//! * `g'` - deployment rate (decrease rate of the push angle),
//! * `h'` - horizontal speed of the translation-spring anchor.
//!
//! Coefficients come from central differences with a step of 1e-4 rad; a
//! five-point check in the tests pins their accuracy.

use crate::geometry::Point2;
use crate::mechanism::{self, FingerConfig, MechanismError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Return-spring model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpringParams {
    /// Torsion spring rate, newton millimetres per radian.
    pub k1: f64,
    /// Translation spring rate, newtons per millimetre.
    pub k2: f64,
    /// Torsion pretension, degrees of wind-up at the stroke start.
    pub pretension_deg: f64,
    /// Translation-spring anchor offset from `D` along the coupler,
    /// millimetres.
    pub attach_r: f64,
}

impl Default for SpringParams {
    fn default() -> Self {
        SpringParams {
            k1: 50.0,
            k2: 0.5,
            pretension_deg: 40.0,
            attach_r: 25.0,
        }
    }
}

/// One force evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceQuery {
    pub theta1_deg: f64,
    /// Contact lever radius on the distal phalange, millimetres.
    pub r: f64,
    /// Press power, watts.
    pub p_press_w: f64,
    /// Crank rate, degrees per second.
    pub omega1_deg_s: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ForceError {
    #[error(transparent)]
    Mechanism(#[from] MechanismError),
    #[error("query field {name} out of range: {value}")]
    BadQuery { name: &'static str, value: f64 },
    #[error("transmission is singular at theta1 = {theta1_deg} deg (denominator {denom})")]
    TransmissionSingular { theta1_deg: f64, denom: f64 },
}

/// Kinematic coefficients at one crank angle, per crank radian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinCoeffs {
    /// Translation speed of `D`, mm/rad.
    pub f_prime: f64,
    /// Deployment rate `-d(psi)/d(theta1)`, rad/rad.
    pub g_prime: f64,
    /// Horizontal anchor speed, mm/rad.
    pub h_prime: f64,
}

/// Finite-difference step for the coefficients, radians.
pub const FD_STEP: f64 = 1e-4;

/// Horizontal position of the translation-spring anchor at a solved pose.
fn anchor_x(cfg: &FingerConfig, springs: &SpringParams, theta1: f64) -> Result<f64, MechanismError> {
    let pose = mechanism::push_chain(cfg, theta1)?;
    Ok(pose.d.x + springs.attach_r * pose.psi.sin())
}

fn d_point(cfg: &FingerConfig, theta1: f64) -> Result<Point2, MechanismError> {
    Ok(mechanism::push_chain(cfg, theta1)?.d)
}

/// Central-difference kinematic coefficients at `theta1` (radians).
pub fn kin_coeffs(
    cfg: &FingerConfig,
    springs: &SpringParams,
    theta1: f64,
) -> Result<KinCoeffs, ForceError> {
    kin_coeffs_with_step(cfg, springs, theta1, FD_STEP)
}

/// Same with an explicit step; the default is [`FD_STEP`].
pub fn kin_coeffs_with_step(
    cfg: &FingerConfig,
    springs: &SpringParams,
    theta1: f64,
    step: f64,
) -> Result<KinCoeffs, ForceError> {
    if !step.is_finite() || step <= 0.0 {
        return Err(ForceError::BadQuery {
            name: "step",
            value: step,
        });
    }
    let lo = theta1 - step;
    let hi = theta1 + step;
    let d_lo = d_point(cfg, lo)?;
    let d_hi = d_point(cfg, hi)?;
    let psi_lo = mechanism::push_chain(cfg, lo)?.psi;
    let psi_hi = mechanism::push_chain(cfg, hi)?.psi;
    let x_lo = anchor_x(cfg, springs, lo)?;
    let x_hi = anchor_x(cfg, springs, hi)?;
    let inv = 1.0 / (2.0 * step);
    Ok(KinCoeffs {
        f_prime: d_hi.dist(d_lo) * inv,
        g_prime: -(psi_hi - psi_lo) * inv,
        h_prime: (x_hi - x_lo) * inv,
    })
}

/// Torsion wind-up at `theta1` (radians): stroke progress plus pretension.
fn torsion_windup(cfg: &FingerConfig, springs: &SpringParams, theta1: f64) -> f64 {
    (theta1 - cfg.stroke_lo_deg.to_radians()) + springs.pretension_deg.to_radians()
}

/// Fingertip normal force for one query, newtons.
pub fn grasp_force(
    cfg: &FingerConfig,
    springs: &SpringParams,
    q: &ForceQuery,
) -> Result<f64, ForceError> {
    cfg.validate()?;
    if !q.omega1_deg_s.is_finite() || q.omega1_deg_s <= 0.0 {
        return Err(ForceError::BadQuery {
            name: "omega1_deg_s",
            value: q.omega1_deg_s,
        });
    }
    if !q.p_press_w.is_finite() || q.p_press_w < 0.0 {
        return Err(ForceError::BadQuery {
            name: "p_press_w",
            value: q.p_press_w,
        });
    }
    if !q.r.is_finite() || q.r < 0.0 || q.r > cfg.l_di {
        return Err(ForceError::BadQuery {
            name: "r",
            value: q.r,
        });
    }
    let theta1 = q.theta1_deg.to_radians();
    let kc = kin_coeffs(cfg, springs, theta1)?;
    let denom = kc.f_prime + q.r * kc.g_prime;
    if denom.abs() < 1e-6 {
        return Err(ForceError::TransmissionSingular {
            theta1_deg: q.theta1_deg,
            denom,
        });
    }
    let omega_rad = q.omega1_deg_s.to_radians();
    let windup = torsion_windup(cfg, springs, theta1);
    let dx1 = anchor_x(cfg, springs, theta1)?
        - anchor_x(cfg, springs, cfg.stroke_lo_deg.to_radians())?;
    let numer = q.p_press_w * 1000.0 / omega_rad - springs.k1 * windup - springs.k2 * dx1 * kc.h_prime;
    Ok(numer / denom)
}

/// Power reconstructed from a force value; the residual against the query's
/// power is the balance-closure check used by the tests, watts.
pub fn power_residual(
    cfg: &FingerConfig,
    springs: &SpringParams,
    q: &ForceQuery,
    f_n: f64,
) -> Result<f64, ForceError> {
    let theta1 = q.theta1_deg.to_radians();
    let kc = kin_coeffs(cfg, springs, theta1)?;
    let windup = torsion_windup(cfg, springs, theta1);
    let dx1 = anchor_x(cfg, springs, theta1)?
        - anchor_x(cfg, springs, cfg.stroke_lo_deg.to_radians())?;
    let omega_rad = q.omega1_deg_s.to_radians();
    let p_back = omega_rad
        * (springs.k1 * windup + springs.k2 * dx1 * kc.h_prime + f_n * (kc.f_prime + q.r * kc.g_prime))
        / 1000.0;
    Ok(p_back - q.p_press_w)
}

/// A force surface over a power and lever-radius grid at one crank angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceSurface {
    pub theta1_deg: f64,
    pub p_values: Vec<f64>,
    pub r_values: Vec<f64>,
    /// Row-major (`p` outer, `r` inner); `None` marks a transmission
    /// singularity at that cell.
    pub cells: Vec<Option<f64>>,
}

impl ForceSurface {
    pub fn to_csv(&self) -> String {
        use crate::numfmt::fmt6;
        let mut s = String::from("P_press_W,r_mm,F_N_N\n");
        for (i, &p) in self.p_values.iter().enumerate() {
            for (j, &r) in self.r_values.iter().enumerate() {
                let cell = self.cells[i * self.r_values.len() + j];
                s.push_str(&format!(
                    "{},{},{}\n",
                    fmt6(p),
                    fmt6(r),
                    cell.map(fmt6).unwrap_or_else(|| "singular".to_string()),
                ));
            }
        }
        s
    }
}

/// Default power grid: 0.2 W to 1.0 W in 0.1 W steps.
pub fn default_p_grid() -> Vec<f64> {
    (0..9).map(|i| 0.2 + 0.1 * i as f64).collect()
}

/// Default lever-radius grid: 10 mm to 55 mm in 5 mm steps.
pub fn default_r_grid() -> Vec<f64> {
    (0..10).map(|i| 10.0 + 5.0 * i as f64).collect()
}

/// Evaluates the force over a grid. Transmission singularities become
/// `None` cells; any other error aborts.
pub fn force_surface(
    cfg: &FingerConfig,
    springs: &SpringParams,
    theta1_deg: f64,
    p_values: &[f64],
    r_values: &[f64],
    omega1_deg_s: f64,
) -> Result<ForceSurface, ForceError> {
    let mut cells = Vec::with_capacity(p_values.len() * r_values.len());
    for &p in p_values {
        for &r in r_values {
            let q = ForceQuery {
                theta1_deg,
                r,
                p_press_w: p,
                omega1_deg_s,
            };
            match grasp_force(cfg, springs, &q) {
                Ok(f) => cells.push(Some(f)),
                Err(ForceError::TransmissionSingular { .. }) => cells.push(None),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(ForceSurface {
        theta1_deg,
        p_values: p_values.to_vec(),
        r_values: r_values.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_queries() {
        let cfg = FingerConfig::default();
        let springs = SpringParams::default();
        let q = ForceQuery {
            theta1_deg: 80.0,
            r: -1.0,
            p_press_w: 0.5,
            omega1_deg_s: 10.0,
        };
        assert!(matches!(
            grasp_force(&cfg, &springs, &q),
            Err(ForceError::BadQuery { name: "r", .. })
        ));
    }

    #[test]
    fn force_decreases_with_lever_radius() {
        let cfg = FingerConfig::default();
        let springs = SpringParams::default();
        let at = |r: f64| {
            grasp_force(
                &cfg,
                &springs,
                &ForceQuery {
                    theta1_deg: 80.0,
                    r,
                    p_press_w: 0.5,
                    omega1_deg_s: 10.0,
                },
            )
            .unwrap()
        };
        assert!(at(20.0) > at(40.0));
    }
}
