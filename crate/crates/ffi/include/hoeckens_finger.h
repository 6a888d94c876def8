/* C interface for the hoeckens-finger kinematics library. */

#ifndef HOECKENS_FINGER_H
#define HOECKENS_FINGER_H

/* Generated by cbindgen from src/lib.rs; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Deployment phase reported by [`hf_posture`].
 */
typedef enum {
  HF_STAGE_IDLE_VERTICAL = 0,
  HF_STAGE_TRIGGERED = 1,
  HF_STAGE_FULLY_DEPLOYED = 2,
} HfStage;

/**
 * Call outcome. Everything except `Ok` leaves the out parameters untouched.
 */
typedef enum {
  /**
   * Success.
   */
  HF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HF_STATUS_NULL_ARG = 1,
  /**
   * An argument or the handle configuration is out of range.
   */
  HF_STATUS_INVALID_ARG = 2,
  /**
   * The mechanism could not be solved for this input.
   */
  HF_STATUS_SOLVE_FAILED = 3,
  /**
   * The force transmission is singular at this pose.
   */
  HF_STATUS_SINGULAR = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  HF_STATUS_PANICKED = 5,
} HfStatus;

/**
 * Opaque finger description: linkage geometry, phalange lengths and spring
 * constants. Treat as a black box behind a pointer.
 */
typedef struct HfFinger HfFinger;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hf_version(void);

/**
 * Creates a finger with the default 30 mm-crank design. Never fails.
 */
HfFinger *hf_finger_new(void);

/**
 * Creates a finger whose generator uses the standard 1 : 1.5 : 6 link
 * proportions at the given crank length in millimetres. The phalange and
 * push-chain lengths keep their defaults, so a strongly rescaled generator
 * may leave push-chain queries unsolvable. Returns null when `crank_mm` is
 * not a positive finite number.
 */
HfFinger *hf_finger_new_scaled(double crank_mm);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle returned by a constructor, and must not
 * be used after this call.
 */
void hf_finger_free(HfFinger *h);

/**
 * Replaces the fingertip length, millimetres. Zero is allowed and collapses
 * the fingertip onto the last joint.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor, with no other
 * thread using it during the call.
 */
HfStatus hf_finger_set_fingertip(HfFinger *h, double l_di_mm);

/**
 * Point traced by the generator output at one crank angle, millimetres.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_path_point(const HfFinger *h, double theta1_deg, double *out_x, double *out_y);

/**
 * Push angle of the deployed chain at one crank angle, degrees.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_push_angle(const HfFinger *h, double theta1_deg, double *out_psi_deg);

/**
 * Phalange posture and deployment stage at a given free height above the
 * base, millimetres in, degrees out.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_posture(const HfFinger *h,
                    double height_mm,
                    double *out_posture_deg,
                    HfStage *out_stage);

/**
 * Crank-to-rocker sweep amplification over the press stroke, sampled at
 * `step_deg`.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_amplification(const HfFinger *h,
                          double step_deg,
                          double *out_input_deg,
                          double *out_output_deg,
                          double *out_ratio);

/**
 * Area swept by the fingertip over the press stroke, square millimetres,
 * sampled at `step_deg`.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_workspace_area(const HfFinger *h, double step_deg, double *out_area_mm2);

/**
 * Widest crank-angle window, searched in `[lo_deg, hi_deg]` at `step_deg`,
 * whose traced output stays within `budget_mm` of a straight line.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_linear_band(const HfFinger *h,
                        double lo_deg,
                        double hi_deg,
                        double step_deg,
                        double budget_mm,
                        double *out_lo_deg,
                        double *out_hi_deg,
                        double *out_max_dev_mm);

/**
 * Normal grasp force at a crank angle for a press power `p_press_w` (watts),
 * contact lever radius `r_mm` and crank rate `omega1_deg_s`.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_grasp_force(const HfFinger *h,
                        double theta1_deg,
                        double r_mm,
                        double p_press_w,
                        double omega1_deg_s,
                        double *out_force_n);

/**
 * Push-angle sweep of one candidate design over the press stroke, degrees.
 * `l_ag_mm` and `l_gd_mm` replace the handle's push-chain link lengths;
 * infeasible designs report `SolveFailed`.
 *
 * # Safety
 * `h` must be null or a live handle from a constructor; non-null out
 * pointers must be valid for writes.
 */
HfStatus hf_delta_theta_max(const HfFinger *h,
                            double l_ag_mm,
                            double l_gd_mm,
                            double *out_sweep_deg);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOECKENS_FINGER_H */
