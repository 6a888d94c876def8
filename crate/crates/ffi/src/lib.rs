//! C interface over the `hoeckens-finger` library.
//!
//! Every entry point takes an opaque [`HfFinger`] handle created by
//! [`hf_finger_new`] or [`hf_finger_new_scaled`] and released by
//! [`hf_finger_free`]. Results come back through out pointers; the return
//! value is always an [`HfStatus`]. Panics never unwind across the boundary,
//! they are caught and reported as `HfStatus::Panicked`.
//!
//! The generated header lives at `include/hoeckens_finger.h` and is refreshed
//! on every build.

use hoeckens_finger::force::{self, ForceError, ForceQuery, SpringParams};
use hoeckens_finger::hoeckens::{self, HoeckensError, HoeckensParams};
use hoeckens_finger::mechanism::{self, FingerConfig, MechanismError, MotionStage};
use hoeckens_finger::optimize::{self, ScanError, ScanSpec, TraceSpec};
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Call outcome. Everything except `Ok` leaves the out parameters untouched.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArg = 1,
    /// An argument or the handle configuration is out of range.
    InvalidArg = 2,
    /// The mechanism could not be solved for this input.
    SolveFailed = 3,
    /// The force transmission is singular at this pose.
    Singular = 4,
    /// An internal panic was caught at the boundary.
    Panicked = 5,
}

/// Deployment phase reported by [`hf_posture`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStage {
    IdleVertical = 0,
    Triggered = 1,
    FullyDeployed = 2,
}

/// Opaque finger description: linkage geometry, phalange lengths and spring
/// constants. Treat as a black box behind a pointer.
pub struct HfFinger {
    cfg: FingerConfig,
    springs: SpringParams,
}

fn status_of_hoeckens(e: &HoeckensError) -> HfStatus {
    match e {
        HoeckensError::BadLength { .. }
        | HoeckensError::BadStep { .. }
        | HoeckensError::BadRange { .. } => HfStatus::InvalidArg,
        _ => HfStatus::SolveFailed,
    }
}

fn status_of_mechanism(e: &MechanismError) -> HfStatus {
    match e {
        MechanismError::Linkage(inner) => status_of_hoeckens(inner),
        MechanismError::BadParameter { .. } | MechanismError::OutOfStroke { .. } => {
            HfStatus::InvalidArg
        }
        _ => HfStatus::SolveFailed,
    }
}

fn status_of_force(e: &ForceError) -> HfStatus {
    match e {
        ForceError::Mechanism(inner) => status_of_mechanism(inner),
        ForceError::BadQuery { .. } => HfStatus::InvalidArg,
        ForceError::TransmissionSingular { .. } => HfStatus::Singular,
    }
}

fn status_of_scan(e: &ScanError) -> HfStatus {
    match e {
        ScanError::Linkage(inner) => status_of_hoeckens(inner),
        ScanError::BadSpec { .. } => HfStatus::InvalidArg,
        _ => HfStatus::SolveFailed,
    }
}

/// Runs `body` with panics converted to a status code.
fn guarded(body: impl FnOnce() -> HfStatus) -> HfStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(HfStatus::Panicked)
}

unsafe fn handle<'a>(h: *const HfFinger) -> Option<&'a HfFinger> {
    h.as_ref()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a finger with the default 30 mm-crank design. Never fails.
#[no_mangle]
pub extern "C" fn hf_finger_new() -> *mut HfFinger {
    Box::into_raw(Box::new(HfFinger {
        cfg: FingerConfig::default(),
        springs: SpringParams::default(),
    }))
}

/// Creates a finger whose generator uses the standard 1 : 1.5 : 6 link
/// proportions at the given crank length in millimetres. The phalange and
/// push-chain lengths keep their defaults, so a strongly rescaled generator
/// may leave push-chain queries unsolvable. Returns null when `crank_mm` is
/// not a positive finite number.
#[no_mangle]
pub extern "C" fn hf_finger_new_scaled(crank_mm: f64) -> *mut HfFinger {
    if !crank_mm.is_finite() || crank_mm <= 0.0 {
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(HfFinger {
        cfg: FingerConfig {
            hoeckens: HoeckensParams::standard(crank_mm),
            ..FingerConfig::default()
        },
        springs: SpringParams::default(),
    }))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle returned by a constructor, and must not
/// be used after this call.
#[no_mangle]
pub unsafe extern "C" fn hf_finger_free(h: *mut HfFinger) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Replaces the fingertip length, millimetres. Zero is allowed and collapses
/// the fingertip onto the last joint.
///
/// # Safety
/// `h` must be null or a live handle from a constructor, with no other
/// thread using it during the call.
#[no_mangle]
pub unsafe extern "C" fn hf_finger_set_fingertip(h: *mut HfFinger, l_di_mm: f64) -> HfStatus {
    guarded(|| {
        let Some(f) = h.as_mut() else {
            return HfStatus::NullArg;
        };
        if !l_di_mm.is_finite() || l_di_mm < 0.0 {
            return HfStatus::InvalidArg;
        }
        f.cfg.l_di = l_di_mm;
        HfStatus::Ok
    })
}

/// Point traced by the generator output at one crank angle, millimetres.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_path_point(
    h: *const HfFinger,
    theta1_deg: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false, false) = (handle(h), out_x.is_null(), out_y.is_null()) else {
            return HfStatus::NullArg;
        };
        match hoeckens::solve(&f.cfg.hoeckens, theta1_deg.to_radians()) {
            Ok(st) => {
                *out_x = st.d.x;
                *out_y = st.d.y;
                HfStatus::Ok
            }
            Err(e) => status_of_hoeckens(&e),
        }
    })
}

/// Push angle of the deployed chain at one crank angle, degrees.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_push_angle(
    h: *const HfFinger,
    theta1_deg: f64,
    out_psi_deg: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false) = (handle(h), out_psi_deg.is_null()) else {
            return HfStatus::NullArg;
        };
        match mechanism::push_chain(&f.cfg, theta1_deg.to_radians()) {
            Ok(pose) => {
                *out_psi_deg = pose.psi.to_degrees();
                HfStatus::Ok
            }
            Err(e) => status_of_mechanism(&e),
        }
    })
}

/// Phalange posture and deployment stage at a given free height above the
/// base, millimetres in, degrees out.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_posture(
    h: *const HfFinger,
    height_mm: f64,
    out_posture_deg: *mut f64,
    out_stage: *mut HfStage,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false, false) = (handle(h), out_posture_deg.is_null(), out_stage.is_null())
        else {
            return HfStatus::NullArg;
        };
        match mechanism::phalange_posture(&f.cfg, height_mm) {
            Ok((posture, stage)) => {
                *out_posture_deg = posture;
                *out_stage = match stage {
                    MotionStage::IdleVertical => HfStage::IdleVertical,
                    MotionStage::Triggered => HfStage::Triggered,
                    MotionStage::FullyDeployed => HfStage::FullyDeployed,
                };
                HfStatus::Ok
            }
            Err(e) => status_of_mechanism(&e),
        }
    })
}

/// Crank-to-rocker sweep amplification over the press stroke, sampled at
/// `step_deg`.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_amplification(
    h: *const HfFinger,
    step_deg: f64,
    out_input_deg: *mut f64,
    out_output_deg: *mut f64,
    out_ratio: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false, false, false) = (
            handle(h),
            out_input_deg.is_null(),
            out_output_deg.is_null(),
            out_ratio.is_null(),
        ) else {
            return HfStatus::NullArg;
        };
        match mechanism::rocker_amplification(&f.cfg, step_deg) {
            Ok(a) => {
                *out_input_deg = a.input_sweep_deg;
                *out_output_deg = a.output_sweep_deg;
                *out_ratio = a.ratio;
                HfStatus::Ok
            }
            Err(e) => status_of_mechanism(&e),
        }
    })
}

/// Area swept by the fingertip over the press stroke, square millimetres,
/// sampled at `step_deg`.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_workspace_area(
    h: *const HfFinger,
    step_deg: f64,
    out_area_mm2: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false) = (handle(h), out_area_mm2.is_null()) else {
            return HfStatus::NullArg;
        };
        match mechanism::workspace_area(&f.cfg, step_deg) {
            Ok(a) => {
                *out_area_mm2 = a;
                HfStatus::Ok
            }
            Err(e) => status_of_mechanism(&e),
        }
    })
}

/// Widest crank-angle window, searched in `[lo_deg, hi_deg]` at `step_deg`,
/// whose traced output stays within `budget_mm` of a straight line.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_linear_band(
    h: *const HfFinger,
    lo_deg: f64,
    hi_deg: f64,
    step_deg: f64,
    budget_mm: f64,
    out_lo_deg: *mut f64,
    out_hi_deg: *mut f64,
    out_max_dev_mm: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false, false, false) = (
            handle(h),
            out_lo_deg.is_null(),
            out_hi_deg.is_null(),
            out_max_dev_mm.is_null(),
        ) else {
            return HfStatus::NullArg;
        };
        match hoeckens::linear_band(&f.cfg.hoeckens, lo_deg, hi_deg, step_deg, budget_mm) {
            Ok(band) => {
                *out_lo_deg = band.theta_lo_deg;
                *out_hi_deg = band.theta_hi_deg;
                *out_max_dev_mm = band.max_deviation;
                HfStatus::Ok
            }
            Err(e) => status_of_hoeckens(&e),
        }
    })
}

/// Normal grasp force at a crank angle for a press power `p_press_w` (watts),
/// contact lever radius `r_mm` and crank rate `omega1_deg_s`.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_grasp_force(
    h: *const HfFinger,
    theta1_deg: f64,
    r_mm: f64,
    p_press_w: f64,
    omega1_deg_s: f64,
    out_force_n: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false) = (handle(h), out_force_n.is_null()) else {
            return HfStatus::NullArg;
        };
        let q = ForceQuery {
            theta1_deg,
            r: r_mm,
            p_press_w,
            omega1_deg_s,
        };
        match force::grasp_force(&f.cfg, &f.springs, &q) {
            Ok(fz) => {
                *out_force_n = fz;
                HfStatus::Ok
            }
            Err(e) => status_of_force(&e),
        }
    })
}

/// Push-angle sweep of one candidate design over the press stroke, degrees.
/// `l_ag_mm` and `l_gd_mm` replace the handle's push-chain link lengths;
/// infeasible designs report `SolveFailed`.
///
/// # Safety
/// `h` must be null or a live handle from a constructor; non-null out
/// pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hf_delta_theta_max(
    h: *const HfFinger,
    l_ag_mm: f64,
    l_gd_mm: f64,
    out_sweep_deg: *mut f64,
) -> HfStatus {
    guarded(|| {
        let (Some(f), false) = (handle(h), out_sweep_deg.is_null()) else {
            return HfStatus::NullArg;
        };
        if !l_ag_mm.is_finite() || l_ag_mm <= 0.0 || !l_gd_mm.is_finite() || l_gd_mm <= 0.0 {
            return HfStatus::InvalidArg;
        }
        let spec = ScanSpec {
            hoeckens: f.cfg.hoeckens,
            l_ag_min: l_ag_mm,
            l_ag_max: l_ag_mm,
            l_gd_min: l_gd_mm,
            l_gd_max: l_gd_mm,
            resolution: 1.0,
            trace: TraceSpec {
                lo_deg: f.cfg.stroke_lo_deg,
                hi_deg: f.cfg.stroke_hi_deg,
                step_deg: 0.5,
            },
            ..ScanSpec::default()
        };
        match optimize::scan(&spec) {
            Ok(result) => match result.cells[0].delta_theta_max_deg {
                Some(sweep) => {
                    *out_sweep_deg = sweep;
                    HfStatus::Ok
                }
                None => HfStatus::SolveFailed,
            },
            Err(e) => status_of_scan(&e),
        }
    })
}
