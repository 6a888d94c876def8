//! Frozen-value regression tests.
//!
//! Expected values were computed independently (closed-form arithmetic and a
//! separate high-level-language implementation of the same definitions) and
//! are pinned here with tolerances matching how precisely they were frozen.

use hoeckens_finger::force::{self, ForceQuery, SpringParams};
use hoeckens_finger::geometry::{self, CircleIntersection, GeometryError, Point2};
use hoeckens_finger::hoeckens::{self, HoeckensParams};
use hoeckens_finger::mechanism::{self, FingerConfig, MotionStage};
use hoeckens_finger::optimize::{self, Infeasibility, ScanSpec};

fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} +/- {tol}"
    );
}

// ---------------------------------------------------------------- geometry

#[test]
fn circle_intersection_three_four_five() {
    // centers 8 apart, radii 5 and 5: meet at (4, +/-3) exactly
    let r = geometry::circle_intersection(Point2::new(0.0, 0.0), 5.0, Point2::new(8.0, 0.0), 5.0)
        .unwrap();
    match r {
        CircleIntersection::Two(lo, hi) => {
            assert_eq!((lo.x, lo.y), (4.0, -3.0));
            assert_eq!((hi.x, hi.y), (4.0, 3.0));
        }
        _ => panic!("expected two points"),
    }
}

#[test]
fn circle_intersection_internal_tangency() {
    let r = geometry::circle_intersection(Point2::new(0.0, 0.0), 5.0, Point2::new(2.0, 0.0), 3.0)
        .unwrap();
    assert_eq!(r, CircleIntersection::Tangent(Point2::new(5.0, 0.0)));
}

#[test]
fn circle_intersection_failures_classified() {
    let o = Point2::new(0.0, 0.0);
    assert!(matches!(
        geometry::circle_intersection(o, 1.0, Point2::new(5.0, 0.0), 1.0),
        Err(GeometryError::DisjointCircles { .. })
    ));
    assert!(matches!(
        geometry::circle_intersection(o, 5.0, Point2::new(1.0, 0.0), 1.0),
        Err(GeometryError::ContainedCircle { .. })
    ));
    assert!(matches!(
        geometry::circle_intersection(o, 1.0, Point2::new(0.0, 0.0), 1.0),
        Err(GeometryError::CoincidentCenters { .. })
    ));
}

#[test]
fn shoelace_hand_values() {
    let tri = [
        Point2::new(0.0, 0.0),
        Point2::new(4.0, 0.0),
        Point2::new(0.0, 3.0),
    ];
    assert_eq!(geometry::shoelace_area(&tri).unwrap(), 6.0);
    // L-shaped hexagon: 3x3 square minus 2x2 corner = 5
    let ell = [
        Point2::new(0.0, 0.0),
        Point2::new(3.0, 0.0),
        Point2::new(3.0, 1.0),
        Point2::new(1.0, 1.0),
        Point2::new(1.0, 3.0),
        Point2::new(0.0, 3.0),
    ];
    assert_eq!(geometry::shoelace_area(&ell).unwrap(), 5.0);
    assert!(matches!(
        geometry::shoelace_area(&tri[..2]),
        Err(GeometryError::TooFewVertices { n: 2 })
    ));
}

#[test]
fn push_angle_diagonal() {
    let a = geometry::push_angle(Point2::new(2.0, 3.0), Point2::new(1.0, 2.0));
    assert_close(a, std::f64::consts::FRAC_PI_4, 1e-15, "45 deg push angle");
}

// ---------------------------------------------------------------- hoeckens

#[test]
fn pose_oracles() {
    // unit scale, crank at zero: coupler 0.5, output at (7, 0)
    let unit = HoeckensParams::standard(1.0);
    let st = hoeckens::solve(&unit, 0.0).unwrap();
    assert_close(st.coupler, 0.5, 1e-15, "unit coupler");
    assert_close(st.d.x, 7.0, 1e-12, "unit D.x");
    assert_close(st.d.y, 0.0, 1e-12, "unit D.y");

    // default scale, half turn: crank tip at (-30, 0), output at (150, 0)
    let p = HoeckensParams::default();
    let st = hoeckens::solve(&p, std::f64::consts::PI).unwrap();
    assert_close(st.d.x, 150.0, 1e-9, "half-turn D.x");
    assert_close(st.d.y, 0.0, 1e-9, "half-turn D.y");
    assert_close(st.coupler, 75.0, 1e-9, "half-turn coupler");
}

#[test]
fn stroke_rise_oracle() {
    // output-point rise across the press stroke
    let p = HoeckensParams::default();
    let y0 = hoeckens::solve(&p, 68.51f64.to_radians()).unwrap().d.y;
    let y1 = hoeckens::solve(&p, 156.56f64.to_radians()).unwrap().d.y;
    assert_close(y1 - y0, 68.993, 0.01, "stroke rise");
}

#[test]
fn default_band_oracle() {
    let p = HoeckensParams::default();
    let budget = 0.0164 * p.scale();
    let band = hoeckens::linear_band(&p, 0.0, 360.0, 0.01, budget).unwrap();
    // the straight segment of the path spans roughly [67, 296] at this budget
    assert_close(band.theta_lo_deg, 66.8, 0.5, "band start");
    assert_close(band.theta_hi_deg, 296.07, 0.5, "band end");
    assert!(band.max_deviation <= budget, "band respects budget");
    assert!(
        band.max_deviation >= 0.0155 * p.scale(),
        "band deviation {} suspiciously small",
        band.max_deviation
    );
    // the fitted line through the straight segment is nearly vertical
    assert!(band.direction.y.abs() > 0.99 * band.direction.norm());
}

#[test]
fn band_width_grows_with_budget() {
    let p = HoeckensParams::default();
    let narrow = hoeckens::linear_band(&p, 0.0, 360.0, 0.1, 0.1).unwrap();
    let wide = hoeckens::linear_band(&p, 0.0, 360.0, 0.1, 0.5).unwrap();
    let w = |b: &hoeckens::LinearBand| b.theta_hi_deg - b.theta_lo_deg;
    assert!(w(&narrow) < w(&wide));
}

// --------------------------------------------------------------- mechanism

#[test]
fn push_angle_oracles() {
    let cfg = FingerConfig::default();
    assert_close(
        mechanism::push_angle_deg(&cfg, 68.51).unwrap(),
        106.682886,
        1e-3,
        "push angle at stroke start",
    );
    assert_close(
        mechanism::push_angle_deg(&cfg, 90.0).unwrap(),
        84.1313,
        1e-3,
        "push angle at 90 deg",
    );
    assert_close(
        mechanism::push_angle_deg(&cfg, 156.51).unwrap(),
        46.5370,
        1e-3,
        "push angle near stroke end",
    );
    let pose = mechanism::push_chain(&cfg, 90f64.to_radians()).unwrap();
    assert_close(pose.g.x, 100.0311, 1e-3, "knee x at 90 deg");
    assert_close(pose.g.y, -74.9585, 1e-3, "knee y at 90 deg");
    assert_close(pose.g.norm(), cfg.l_ag, 1e-9, "knee on frame circle");
    assert_close(pose.g.dist(pose.d), cfg.l_gd, 1e-9, "knee on coupler circle");
}

#[test]
fn amplification_oracle() {
    let cfg = FingerConfig::default();
    let amp = mechanism::rocker_amplification(&cfg, 0.5).unwrap();
    assert_close(amp.input_sweep_deg, 30.0144, 0.01, "input sweep");
    assert_close(amp.output_sweep_deg, 60.1459, 0.01, "output sweep");
    assert_close(amp.ratio, 2.0039, 0.002, "amplification ratio");
}

#[test]
fn posture_table() {
    let cfg = FingerConfig::default();
    let (p, s) = mechanism::phalange_posture(&cfg, 180.0).unwrap();
    assert_eq!((p, s), (0.0, MotionStage::IdleVertical));
    let (p, s) = mechanism::phalange_posture(&cfg, 161.0).unwrap();
    assert_eq!((p, s), (0.0, MotionStage::Triggered));
    let (p, s) = mechanism::phalange_posture(&cfg, 93.0).unwrap();
    assert_close(p, 35.0, 0.01, "posture at full press");
    assert_eq!(s, MotionStage::FullyDeployed);
    // saturation boundary
    let (_, s) = mechanism::phalange_posture(&cfg, 112.0).unwrap();
    assert_eq!(s, MotionStage::FullyDeployed);
    let (_, s) = mechanism::phalange_posture(&cfg, 112.5).unwrap();
    assert_eq!(s, MotionStage::Triggered);
}

#[test]
fn trajectory_event_oracles() {
    let cfg = FingerConfig::default();
    let traj = mechanism::simulate(&cfg, 10.0, 0.001, true).unwrap();
    assert_eq!(traj.samples.len(), 8806);

    let ti = traj.trigger_index.expect("stroke triggers");
    let trig = &traj.samples[ti];
    assert_close(trig.t, 2.487, 0.002, "trigger time");
    assert_close(trig.theta1_deg, 93.38, 0.02, "trigger crank angle");

    // press displacement at the trigger
    let p = &cfg.hoeckens;
    let y0 = hoeckens::solve(p, cfg.stroke_lo_deg.to_radians()).unwrap().d.y;
    let yt = hoeckens::solve(p, trig.theta1_deg.to_radians()).unwrap().d.y;
    assert_close(yt - y0, 19.166, 0.02, "trigger press displacement");

    let last = traj.samples.last().unwrap();
    assert_close(last.p.x, 181.620, 0.005, "final fingertip x");
    assert_close(last.p.y, -62.3548, 0.005, "final fingertip y");
    assert_eq!(last.stage, MotionStage::FullyDeployed);

    // deployment lifts the fingertip beyond the plain press rise
    let free = mechanism::simulate(&cfg, 10.0, 0.001, false).unwrap();
    let lift = last.p.y - free.samples.last().unwrap().p.y;
    assert_close(lift, 9.937, 0.01, "extra fingertip lift");

    // before the trigger the pushed and free paths are the same samples
    for i in 0..ti {
        assert_eq!(traj.samples[i].p, free.samples[i].p, "sample {i} diverges");
    }
}

#[test]
fn workspace_area_oracles() {
    let cfg = FingerConfig::default();
    let a1 = mechanism::workspace_area(&cfg, 0.01).unwrap();
    let a2 = mechanism::workspace_area(&cfg, 0.02).unwrap();
    assert_close(a1, 153.9491, 0.01, "swept area at 0.01 deg");
    assert_close(a2, 153.9821, 0.01, "swept area at 0.02 deg");
    assert!(
        (a2 - a1).abs() / a1 < 1e-3,
        "area under resampling moved by {}",
        (a2 - a1).abs() / a1
    );

    // zero-length distal phalange without the push chain: the output-point
    // path itself closes to a thin sliver
    let degenerate = FingerConfig {
        l_di: 0.0,
        ..FingerConfig::default()
    };
    let a = mechanism::workspace_area_of(&degenerate, 0.01, false).unwrap();
    assert_close(a, 5.8089, 0.01, "degenerate path sliver area");
}

// ---------------------------------------------------------------- optimize

#[test]
fn default_scan_oracles() {
    let spec = ScanSpec::default();
    let result = optimize::scan(&spec).unwrap();
    assert_eq!(result.cells.len(), 151 * 151);
    assert_eq!(result.feasible_count(), 3645);

    let best = result.argmax().unwrap();
    assert_eq!((best.l_ag, best.l_gd), (180.0, 30.0));
    assert_close(best.delta_theta_max_deg.unwrap(), 88.0, 0.01, "best sweep");

    let cell = |ag: f64, gd: f64| {
        result
            .cells
            .iter()
            .find(|c| c.l_ag == ag && c.l_gd == gd)
            .unwrap()
    };
    let c = cell(125.0, 50.0);
    assert!(c.feasible());
    assert_close(
        c.delta_theta_max_deg.unwrap(),
        60.1459,
        0.005,
        "sweep at (125, 50)",
    );

    // (95, 50) cannot assemble anywhere on the trace: the output point sits
    // about 151 mm from the origin while the links only reach 145 mm
    let c = cell(95.0, 50.0);
    assert!(!c.feasible());
    match c.infeasibility.unwrap() {
        Infeasibility::Grashof { theta1_deg, d } => {
            assert_eq!(theta1_deg, 68.51);
            assert_close(d, 173.155, 0.01, "violating distance");
        }
        other => panic!("expected a Grashof rejection, got {other:?}"),
    }

    // big symmetric links assemble but drop the knee below the margin
    let c = cell(170.0, 170.0);
    assert!(!c.feasible());
    assert!(matches!(
        c.infeasibility.unwrap(),
        Infeasibility::Workspace { .. }
    ));

    let sens = optimize::sensitivity(&result).unwrap();
    assert_close(sens.pearson_r, 0.933658, 0.001, "pooled correlation");
    assert_close(sens.slope_ag, 0.295866, 0.001, "frame-link slope");
    assert_close(sens.slope_gd_below_60, -0.696978, 0.001, "coupler slope");
    assert_close(sens.incr_30mm_deg, 8.87597, 0.02, "30 mm increment");
    assert_eq!(sens.n_feasible, 3645);
    assert!(!sens.marginal_ag.is_empty() && !sens.marginal_gd.is_empty());
}

#[test]
fn dense_trace_confirms_coarse_sweep() {
    let spec = ScanSpec::default();
    let coarse = hoeckens::trace(
        &spec.hoeckens,
        spec.trace.lo_deg,
        spec.trace.hi_deg,
        spec.trace.step_deg,
    )
    .unwrap();
    let dense = hoeckens::trace(&spec.hoeckens, spec.trace.lo_deg, spec.trace.hi_deg, 0.05)
        .unwrap();
    let d_coarse = optimize::delta_theta_sweep(125.0, 50.0, &coarse);
    let d_dense = optimize::delta_theta_sweep(125.0, 50.0, &dense);
    assert_close(d_dense, 60.1654, 0.005, "dense sweep at (125, 50)");
    assert!((d_dense - d_coarse).abs() <= 0.1, "coarse sweep off by more than 0.1 deg");
}

#[test]
fn scan_csv_shape() {
    let spec = ScanSpec {
        l_ag_min: 94.0,
        l_ag_max: 96.0,
        l_gd_min: 49.0,
        l_gd_max: 51.0,
        resolution: 1.0,
        ..ScanSpec::default()
    };
    let csv = optimize::scan(&spec).unwrap().to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "L_AG_mm,L_DG_mm,feasible,delta_theta_max_deg,reason"
    );
    assert_eq!(csv.lines().count(), 10);
    let row_95_50 = csv
        .lines()
        .find(|l| l.starts_with("95,50,"))
        .expect("row for (95, 50)");
    assert_eq!(row_95_50, "95,50,false,,grashof@theta1=68.51");
}

// ------------------------------------------------------------------- force

#[test]
fn kinematic_coefficient_oracles() {
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let at = |deg: f64| force::kin_coeffs(&cfg, &springs, deg.to_radians()).unwrap();

    let k80 = at(80.0);
    assert_close(k80.f_prime, 44.374105, 1e-4, "f' at 80 deg");
    assert_close(k80.g_prime, 0.964431, 1e-4, "g' at 80 deg");
    assert_close(k80.h_prime, 0.729907, 1e-4, "h' at 80 deg");

    let k120 = at(120.0);
    assert_close(k120.f_prime, 45.857038, 1e-4, "f' at 120 deg");
    assert_close(k120.g_prime, 0.572213, 1e-4, "g' at 120 deg");
    assert_close(k120.h_prime, -5.898682, 1e-4, "h' at 120 deg");

    // the push angle reverses direction near 238 deg, outside the stroke
    let k = at(238.06);
    assert!(k.g_prime.abs() < 1e-3, "g' at the reversal: {}", k.g_prime);

    // spring anchor position at the stroke start
    let pose = mechanism::push_chain(&cfg, cfg.stroke_lo_deg.to_radians()).unwrap();
    let x1 = pose.d.x + springs.attach_r * pose.psi.sin();
    assert_close(x1, 174.073142, 1e-4, "anchor x at stroke start");
}

#[test]
fn grasp_force_oracles() {
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let f = |theta1_deg: f64, r: f64, p: f64| {
        force::grasp_force(
            &cfg,
            &springs,
            &ForceQuery {
                theta1_deg,
                r,
                p_press_w: p,
                omega1_deg_s: 10.0,
            },
        )
        .unwrap()
    };
    assert_close(f(80.0, 30.0, 0.5), 38.463, 0.005, "force at 80 deg");
    assert_close(f(120.0, 30.0, 0.5), 44.123, 0.005, "force at 120 deg");
    assert_close(f(80.0, 10.0, 0.2), 20.3774, 0.005, "corner force at 80 deg");
    assert_close(f(120.0, 10.0, 0.2), 20.5874, 0.005, "corner force at 120 deg");
}

#[test]
fn sweep_rate_integrates_to_sweep() {
    // integrating the deployment rate across the stroke reproduces the
    // push-angle sweep
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let step = 0.1f64;
    let n = ((cfg.stroke_hi_deg - cfg.stroke_lo_deg) / step) as usize;
    let mut acc = 0.0;
    let mut prev = force::kin_coeffs(&cfg, &springs, cfg.stroke_lo_deg.to_radians())
        .unwrap()
        .g_prime;
    for i in 1..=n {
        let th = cfg.stroke_lo_deg + (i as f64) * step;
        let g = force::kin_coeffs(&cfg, &springs, th.to_radians()).unwrap().g_prime;
        acc += 0.5 * (prev + g) * step.to_radians();
        prev = g;
    }
    // psi decreases monotonically over the stroke, so the integral of the
    // deployment rate equals the full sweep
    assert_close(acc.to_degrees(), 60.1459, 0.02, "integrated sweep");
}

#[test]
fn surfaces_on_default_grids() {
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let p = force::default_p_grid();
    let r = force::default_r_grid();
    assert_eq!(p.len(), 9);
    assert_eq!(r.len(), 10);
    let s80 = force::force_surface(&cfg, &springs, 80.0, &p, &r, 10.0).unwrap();
    let s120 = force::force_surface(&cfg, &springs, 120.0, &p, &r, 10.0).unwrap();

    let mut min_gap = f64::INFINITY;
    let mut min_force = f64::INFINITY;
    for (a, b) in s80.cells.iter().zip(&s120.cells) {
        let (a, b) = (a.unwrap(), b.unwrap());
        min_gap = min_gap.min(b - a);
        min_force = min_force.min(a.min(b));
    }
    assert_close(min_gap, 0.2100, 0.001, "smallest dominance gap");
    assert_close(min_force, 11.2993, 0.05, "smallest force on the grid");
    assert!(min_force > 0.0);

    // the two surfaces share their shape almost exactly
    let va: Vec<f64> = s80.cells.iter().flatten().copied().collect();
    let vb: Vec<f64> = s120.cells.iter().flatten().copied().collect();
    let n = va.len() as f64;
    let (ma, mb) = (
        va.iter().sum::<f64>() / n,
        vb.iter().sum::<f64>() / n,
    );
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (a, b) in va.iter().zip(&vb) {
        sab += (a - ma) * (b - mb);
        saa += (a - ma) * (a - ma);
        sbb += (b - mb) * (b - mb);
    }
    let corr = sab / (saa.sqrt() * sbb.sqrt());
    assert_close(corr, 0.990957, 0.001, "surface correlation");
    assert!(corr > 0.95);
}

#[test]
fn singular_transmission_cells_are_marked() {
    // past the push-angle reversal the deployment rate goes negative, so a
    // lever radius of f'/(-g') zeroes the transmission
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let k = force::kin_coeffs(&cfg, &springs, 250f64.to_radians()).unwrap();
    assert!(k.g_prime < 0.0, "deployment rate should reverse past the stroke");
    let r_singular = k.f_prime / (-k.g_prime);
    let big = FingerConfig {
        l_di: r_singular + 10.0,
        ..cfg
    };
    let q = ForceQuery {
        theta1_deg: 250.0,
        r: r_singular,
        p_press_w: 0.5,
        omega1_deg_s: 10.0,
    };
    match force::grasp_force(&big, &springs, &q) {
        Err(force::ForceError::TransmissionSingular { .. }) => {}
        other => panic!("expected a singular transmission, got {other:?}"),
    }
    let surface =
        force::force_surface(&big, &springs, 250.0, &[0.5], &[r_singular], 10.0).unwrap();
    assert_eq!(surface.cells, vec![None]);
    assert!(surface.to_csv().contains("singular"));
}

// --------------------------------------------------------------- csv shape

#[test]
fn trajectory_csv_shape() {
    let cfg = FingerConfig::default();
    let traj = mechanism::simulate(&cfg, 10.0, 0.05, true).unwrap();
    let csv = traj.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t_s,theta1_deg,x_mm,y_mm,vx_mm_s,vy_mm_s,posture_deg,stage"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("0,68.51,"));
    assert!(first.ends_with(",idle_vertical"));
    assert_eq!(csv.lines().count(), traj.samples.len() + 1);
}

#[test]
fn force_csv_shape() {
    let cfg = FingerConfig::default();
    let springs = SpringParams::default();
    let s = force::force_surface(&cfg, &springs, 80.0, &[0.5], &[30.0], 10.0).unwrap();
    let csv = s.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "P_press_W,r_mm,F_N_N");
    let row = lines.next().unwrap();
    assert!(row.starts_with("0.5,30,38.46"), "row was {row}");
}
