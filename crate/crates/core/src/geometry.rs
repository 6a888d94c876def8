//! Planar geometric primitives.
//!
//! Everything works in millimetres and radians. The tolerance for degenerate
//! configurations is [`EPS_GEO`]; intersection *classification* (two points,
//! tangent, disjoint, contained) is done with exact comparisons on the
//! computed distances so that analytically tangent inputs classify as
//! tangent.

use thiserror::Error;

/// Degeneracy tolerance in millimetres.
pub const EPS_GEO: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn scale(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self x o`.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;

    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;

    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("circle centers coincide (separation {d} mm)")]
    CoincidentCenters { d: f64 },
    #[error("circles are disjoint: center distance {d} mm exceeds r1 + r2 = {sum} mm")]
    DisjointCircles { d: f64, sum: f64 },
    #[error("one circle contains the other: center distance {d} mm is below |r1 - r2| = {diff} mm")]
    ContainedCircle { d: f64, diff: f64 },
    #[error("polygon needs at least 3 vertices, got {n}")]
    TooFewVertices { n: usize },
}

/// Result of intersecting two circles that do meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    /// Two distinct points, ordered lower `y` first (ties: lower `x` first).
    Two(Point2, Point2),
    /// Externally or internally tangent: a single point.
    Tangent(Point2),
}

impl CircleIntersection {
    /// The branch used by the mechanism layer: the lower of the two points,
    /// or the tangent point itself.
    pub fn lower(self) -> Point2 {
        match self {
            CircleIntersection::Two(p, _) => p,
            CircleIntersection::Tangent(p) => p,
        }
    }
}

/// Intersects the circles `(c1, r1)` and `(c2, r2)`.
///
/// Classification is exact on the computed center distance `d`:
/// `d > r1 + r2` is disjoint, `d == r1 + r2` externally tangent,
/// `d == |r1 - r2|` internally tangent, `d < |r1 - r2|` contained.
/// Coincident centers (within [`EPS_GEO`]) are rejected since the
/// intersection is either empty or a whole circle.
pub fn circle_intersection(
    c1: Point2,
    r1: f64,
    c2: Point2,
    r2: f64,
) -> Result<CircleIntersection, GeometryError> {
    let d = c1.dist(c2);
    if d < EPS_GEO {
        return Err(GeometryError::CoincidentCenters { d });
    }
    let sum = r1 + r2;
    let diff = (r1 - r2).abs();
    if d > sum {
        return Err(GeometryError::DisjointCircles { d, sum });
    }
    if d < diff {
        return Err(GeometryError::ContainedCircle { d, diff });
    }

    // foot of the radical axis along the center line
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let ux = (c2.x - c1.x) / d;
    let uy = (c2.y - c1.y) / d;
    let foot = Point2::new(c1.x + a * ux, c1.y + a * uy);

    if d == sum || d == diff {
        return Ok(CircleIntersection::Tangent(foot));
    }

    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    // offsets perpendicular to the center line
    let p1 = Point2::new(foot.x - h * uy, foot.y + h * ux);
    let p2 = Point2::new(foot.x + h * uy, foot.y - h * ux);
    let (lo, hi) = if p1.y < p2.y || (p1.y == p2.y && p1.x <= p2.x) {
        (p1, p2)
    } else {
        (p2, p1)
    };
    Ok(CircleIntersection::Two(lo, hi))
}

/// Inclination of the segment from `g` up to `d`, measured from the +y axis
/// toward +x, in radians. Depends only on the difference `d - g`, so it is
/// invariant under a common translation of both points.
pub fn push_angle(d: Point2, g: Point2) -> f64 {
    (d.x - g.x).atan2(d.y - g.y)
}

/// Absolute area of the polygon with the given vertex loop (closed
/// implicitly from the last vertex back to the first), by the shoelace sum.
pub fn shoelace_area(pts: &[Point2]) -> Result<f64, GeometryError> {
    if pts.len() < 3 {
        return Err(GeometryError::TooFewVertices { n: pts.len() });
    }
    let mut acc = 0.0;
    for i in 0..pts.len() {
        let p = pts[i];
        let q = pts[(i + 1) % pts.len()];
        acc += p.cross(q);
    }
    Ok(0.5 * acc.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circles_offset_one() {
        let r = circle_intersection(Point2::new(0.0, 0.0), 1.0, Point2::new(1.0, 0.0), 1.0)
            .unwrap();
        match r {
            CircleIntersection::Two(a, b) => {
                let h = (3.0f64).sqrt() / 2.0;
                assert!((a.x - 0.5).abs() < 1e-12 && (a.y + h).abs() < 1e-12);
                assert!((b.x - 0.5).abs() < 1e-12 && (b.y - h).abs() < 1e-12);
            }
            _ => panic!("expected two points"),
        }
    }

    #[test]
    fn exact_tangency() {
        let r = circle_intersection(Point2::new(0.0, 0.0), 2.0, Point2::new(5.0, 0.0), 3.0)
            .unwrap();
        assert_eq!(r, CircleIntersection::Tangent(Point2::new(2.0, 0.0)));
    }

    #[test]
    fn square_area() {
        let sq = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        assert_eq!(shoelace_area(&sq).unwrap(), 4.0);
    }

    #[test]
    fn push_angle_quadrants() {
        // straight up: 0; straight toward +x: pi/2
        assert_eq!(push_angle(Point2::new(0.0, 1.0), Point2::new(0.0, 0.0)), 0.0);
        let q = push_angle(Point2::new(1.0, 0.0), Point2::new(0.0, 0.0));
        assert!((q - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
