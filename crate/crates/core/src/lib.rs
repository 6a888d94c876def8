//! Kinematics and design tooling for an underactuated robotic finger driven
//! by a Hoecken straight-line linkage.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`] - planar primitives (circle intersection, polygon area,
//!   push-angle) shared by every layer above.
//! * [`hoeckens`] - the crank/rocker/rod straight-line generator: closed-form
//!   pose solve, path tracing and detection of the near-linear band.
//! * [`mechanism`] - the full finger: four-bar push chain, phalange posture,
//!   motion staging, time-domain simulation and swept workspace area.
//! * [`optimize`] - grid search over the push-chain link lengths with
//!   feasibility screening and sensitivity statistics.
//! * [`force`] - quasi-static fingertip normal force from a power balance,
//!   with finite-difference kinematic coefficients.
//! * [`cli`] - config handling, CSV/SVG artifact writers and the command
//!   implementations behind the `hoeckens-finger` binary.
//!
//! Angles are stored in radians inside solver state; every public sampling
//! grid, config field and CSV column uses degrees. Sampling grids are always
//! generated as `lo + i * step` in degrees (never accumulated), so a refined
//! grid reproduces the coarse grid's sample points bit-for-bit.

pub mod cli;
pub mod force;
pub mod geometry;
pub mod hoeckens;
pub mod mechanism;
pub mod numfmt;
pub mod optimize;
pub mod svg;
