//! Analytic convex domains: signed distance, inradius, cut locus, high ridge,
//! and the distance-profile function that solves the torsion-type problem on
//! web domains.

mod ellipse;
mod incircle;
mod locus;
mod probe;
mod skeleton;

pub use locus::{
    cut_equals_high_ridge, cut_locus, diametral_ball_check, hausdorff_distance, high_ridge,
    CutHighVerdict, DiametralBall, Locus,
};
pub use probe::{distance_probe, DistanceProbe};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// `c0 = 3^(4/3) / 4`, the constant in the radial profile `c0 [rho^(4/3) - (rho - d)^(4/3)]`.
pub const C0: f64 = 1.0816871625497828;

/// Exponent constant used throughout: 4/3.
pub(crate) const FOUR_THIRDS: f64 = 4.0 / 3.0;

/// A bounded open convex domain in the plane.
///
/// All shapes expose an exact signed distance to their boundary (positive
/// inside) and a boundary parametrization by normalized arclength.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Ball {
        center: Vec2,
        radius: f64,
    },
    /// Parallel neighborhood of the segment `[p0, p1]` at distance `radius`.
    Stadium {
        p0: Vec2,
        p1: Vec2,
        radius: f64,
    },
    /// Axis-aligned, `a` along x, `b` along y, `a >= b`.
    Ellipse {
        center: Vec2,
        a: f64,
        b: f64,
    },
    /// Strictly convex, counterclockwise vertices.
    Polygon {
        vertices: Vec<Vec2>,
    },
}

/// Serialization schema for domains.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Ball {
        center: [f64; 2],
        radius: f64,
    },
    Stadium {
        p0: [f64; 2],
        p1: [f64; 2],
        radius: f64,
    },
    Ellipse {
        center: [f64; 2],
        semi_axis_a: f64,
        semi_axis_b: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

impl Domain {
    /// Validates a shape description. A zero-length stadium segment is
    /// normalized to a ball.
    pub fn from_spec(spec: &DomainSpec) -> Result<Domain> {
        match spec {
            DomainSpec::Ball { center, radius } => Domain::ball((*center).into(), *radius),
            DomainSpec::Stadium { p0, p1, radius } => {
                Domain::stadium((*p0).into(), (*p1).into(), *radius)
            }
            DomainSpec::Ellipse {
                center,
                semi_axis_a,
                semi_axis_b,
            } => Domain::ellipse((*center).into(), *semi_axis_a, *semi_axis_b),
            DomainSpec::Polygon { vertices } => {
                Domain::polygon(vertices.iter().map(|&v| v.into()).collect())
            }
        }
    }

    pub fn to_spec(&self) -> DomainSpec {
        match self {
            Domain::Ball { center, radius } => DomainSpec::Ball {
                center: (*center).into(),
                radius: *radius,
            },
            Domain::Stadium { p0, p1, radius } => DomainSpec::Stadium {
                p0: (*p0).into(),
                p1: (*p1).into(),
                radius: *radius,
            },
            Domain::Ellipse { center, a, b } => DomainSpec::Ellipse {
                center: (*center).into(),
                semi_axis_a: *a,
                semi_axis_b: *b,
            },
            Domain::Polygon { vertices } => DomainSpec::Polygon {
                vertices: vertices.iter().map(|&v| v.into()).collect(),
            },
        }
    }

    pub fn ball(center: Vec2, radius: f64) -> Result<Domain> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidInput("non-finite ball parameters".into()));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidDomain("ball radius must be positive".into()));
        }
        Ok(Domain::Ball { center, radius })
    }

    pub fn stadium(p0: Vec2, p1: Vec2, radius: f64) -> Result<Domain> {
        if !p0.is_finite() || !p1.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidInput("non-finite stadium parameters".into()));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidDomain(
                "stadium radius must be positive".into(),
            ));
        }
        // Degenerate core segment: this is a ball.
        if p0.dist(p1) <= 1e-12 * radius {
            return Ok(Domain::Ball { center: p0, radius });
        }
        Ok(Domain::Stadium { p0, p1, radius })
    }

    pub fn ellipse(center: Vec2, a: f64, b: f64) -> Result<Domain> {
        if !center.is_finite() || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput("non-finite ellipse parameters".into()));
        }
        if b <= 0.0 || a < b {
            return Err(Error::InvalidDomain(
                "ellipse semi-axes must satisfy a >= b > 0".into(),
            ));
        }
        Ok(Domain::Ellipse { center, a, b })
    }

    pub fn polygon(vertices: Vec<Vec2>) -> Result<Domain> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite polygon vertex".into()));
        }
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidDomain("polygon needs >= 3 vertices".into()));
        }
        let scale = polygon_scale(&vertices);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b - a).cross(c - b);
            if cross <= 1e-12 * scale * scale {
                return Err(Error::InvalidDomain(
                    "polygon must be strictly convex and counterclockwise".into(),
                ));
            }
        }
        Ok(Domain::Polygon { vertices })
    }

    /// Signed distance to the boundary: positive inside, zero on the
    /// boundary, negative outside.
    pub fn signed_distance(&self, p: Vec2) -> Result<f64> {
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite point".into()));
        }
        Ok(self.sd(p))
    }

    /// Infallible variant for trusted (finite) points; hot paths use this.
    pub fn sd(&self, p: Vec2) -> f64 {
        match self {
            Domain::Ball { center, radius } => radius - p.dist(*center),
            Domain::Stadium { p0, p1, radius } => radius - dist_to_segment(p, *p0, *p1),
            Domain::Ellipse { center, a, b } => ellipse::signed_distance(*center, *a, *b, p),
            Domain::Polygon { vertices } => polygon_signed_distance(vertices, p),
        }
    }

    /// The inradius `rho = max signed distance`.
    pub fn inradius(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. } | Domain::Stadium { radius, .. } => *radius,
            Domain::Ellipse { b, .. } => *b,
            Domain::Polygon { vertices } => incircle::inscribed_circle(vertices).radius,
        }
    }

    /// Distance-profile solution `c0 [rho^(4/3) - (rho - d)^(4/3)]`, exact on
    /// web domains (cut locus = high ridge) and a lower comparison profile
    /// elsewhere.
    pub fn web_function(&self, p: Vec2) -> Result<f64> {
        let d = self.signed_distance(p)?;
        let scale = self.bbox_diag();
        if d < -1e-9 * scale {
            return Err(Error::OutsideDomain(format!(
                "({}, {}) is outside the domain closure",
                p.x, p.y
            )));
        }
        Ok(self.web_value(d.max(0.0)))
    }

    /// Profile value from a known boundary distance.
    #[inline]
    pub fn web_value(&self, d: f64) -> f64 {
        let rho = self.inradius();
        C0 * (rho.powf(FOUR_THIRDS) - (rho - d).max(0.0).powf(FOUR_THIRDS))
    }

    /// Axis-aligned bounding box (exact).
    pub fn bbox(&self) -> (Vec2, Vec2) {
        match self {
            Domain::Ball { center, radius } => (
                Vec2::new(center.x - radius, center.y - radius),
                Vec2::new(center.x + radius, center.y + radius),
            ),
            Domain::Stadium { p0, p1, radius } => (
                Vec2::new(
                    p0.x.min(p1.x) - radius,
                    p0.y.min(p1.y) - radius,
                ),
                Vec2::new(
                    p0.x.max(p1.x) + radius,
                    p0.y.max(p1.y) + radius,
                ),
            ),
            Domain::Ellipse { center, a, b } => (
                Vec2::new(center.x - a, center.y - b),
                Vec2::new(center.x + a, center.y + b),
            ),
            Domain::Polygon { vertices } => {
                let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
                let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
                for v in vertices {
                    lo.x = lo.x.min(v.x);
                    lo.y = lo.y.min(v.y);
                    hi.x = hi.x.max(v.x);
                    hi.y = hi.y.max(v.y);
                }
                (lo, hi)
            }
        }
    }

    pub fn bbox_diag(&self) -> f64 {
        let (lo, hi) = self.bbox();
        hi.dist(lo)
    }

    /// Boundary point and inward unit normal at normalized arclength
    /// `s in [0, 1)`, counterclockwise.
    pub fn boundary_point(&self, s: f64) -> (Vec2, Vec2) {
        let s = s.rem_euclid(1.0);
        match self {
            Domain::Ball { center, radius } => {
                let dir = Vec2::from_angle(2.0 * std::f64::consts::PI * s);
                (*center + dir * *radius, -dir)
            }
            Domain::Stadium { p0, p1, radius } => stadium_boundary(*p0, *p1, *radius, s),
            Domain::Ellipse { center, a, b } => ellipse::boundary_point(*center, *a, *b, s),
            Domain::Polygon { vertices } => polygon_boundary(vertices, s),
        }
    }

    /// True when the shape family has a C^2 boundary (ball, ellipse).
    pub fn is_c2_family(&self) -> bool {
        matches!(self, Domain::Ball { .. } | Domain::Ellipse { .. })
    }

    /// True when the shape automatically satisfies an interior sphere
    /// condition (fails at polygon corners).
    pub fn has_interior_sphere(&self) -> bool {
        !matches!(self, Domain::Polygon { .. })
    }

    pub fn shape_name(&self) -> &'static str {
        match self {
            Domain::Ball { .. } => "ball",
            Domain::Stadium { .. } => "stadium",
            Domain::Ellipse { .. } => "ellipse",
            Domain::Polygon { .. } => "polygon",
        }
    }
}

pub(crate) fn dist_to_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

fn polygon_scale(vertices: &[Vec2]) -> f64 {
    let mut m = 0.0f64;
    for v in vertices {
        m = m.max(v.x.abs()).max(v.y.abs());
    }
    m.max(1.0)
}

/// Outward unit normal and offset (`n . x = c` on the edge line) for each
/// polygon edge, counterclockwise order.
pub(crate) fn polygon_edges(vertices: &[Vec2]) -> Vec<(Vec2, f64)> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            // for ccw vertices the outward normal is the cw perpendicular
            let nrm = (-(b - a).perp()).unit().expect("degenerate edge");
            (nrm, nrm.dot(a))
        })
        .collect()
}

fn polygon_signed_distance(vertices: &[Vec2], p: Vec2) -> f64 {
    let edges = polygon_edges(vertices);
    let mut inside_margin = f64::INFINITY;
    let mut is_inside = true;
    for (nrm, c) in &edges {
        let slack = c - nrm.dot(p);
        inside_margin = inside_margin.min(slack);
        if slack < 0.0 {
            is_inside = false;
        }
    }
    if is_inside {
        inside_margin
    } else {
        let n = vertices.len();
        let d = (0..n)
            .map(|i| dist_to_segment(p, vertices[i], vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        -d
    }
}

fn stadium_boundary(p0: Vec2, p1: Vec2, r: f64, s: f64) -> (Vec2, Vec2) {
    let axis = (p1 - p0).unit().expect("degenerate stadium was normalized");
    let len = p1.dist(p0);
    let left = axis.perp(); // left of travel p0 -> p1
    let per = 2.0 * len + 2.0 * std::f64::consts::PI * r;
    let t = s * per;
    let base = left.y.atan2(left.x);
    if t < len {
        // side at +left, traveling p0 -> p1
        let q = p0 + axis * t + left * r;
        (q, -left)
    } else if t < len + std::f64::consts::PI * r {
        // cap around p1, rotating from +left to -left clockwise of travel
        let ang = base - (t - len) / r;
        let dir = Vec2::from_angle(ang);
        (p1 + dir * r, -dir)
    } else if t < 2.0 * len + std::f64::consts::PI * r {
        let tt = t - len - std::f64::consts::PI * r;
        let q = p1 - axis * tt - left * r;
        (q, left)
    } else {
        let ang = base + std::f64::consts::PI + (t - 2.0 * len - std::f64::consts::PI * r) / r;
        let dir = Vec2::from_angle(ang);
        (p0 + dir * r, -dir)
    }
}

fn polygon_boundary(vertices: &[Vec2], s: f64) -> (Vec2, Vec2) {
    let n = vertices.len();
    let lens: Vec<f64> = (0..n)
        .map(|i| vertices[i].dist(vertices[(i + 1) % n]))
        .collect();
    let per: f64 = lens.iter().sum();
    let mut t = s * per;
    for i in 0..n {
        if t <= lens[i] || i == n - 1 {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let dir = (b - a).unit().expect("degenerate edge");
            let q = a + dir * t.min(lens[i]);
            return (q, dir.perp()); // inward normal for ccw boundary
        }
        t -= lens[i];
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit_ball() -> Domain {
        Domain::ball(Vec2::ZERO, 1.0).unwrap()
    }

    fn square2() -> Domain {
        Domain::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn ball_signed_distance() {
        let d = unit_ball();
        assert_eq!(d.signed_distance(Vec2::ZERO).unwrap(), 1.0);
        assert_eq!(d.signed_distance(Vec2::new(2.0, 0.0)).unwrap(), -1.0);
        assert!(d
            .signed_distance(Vec2::new(f64::NAN, 0.0))
            .is_err());
    }

    #[test]
    fn stadium_distance_and_normalization() {
        let d = Domain::stadium(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(d.sd(Vec2::ZERO), 1.0);
        assert_relative_eq!(d.sd(Vec2::new(1.0, 1.0)), 0.0, epsilon = 1e-14);
        assert_relative_eq!(d.sd(Vec2::new(2.5, 0.0)), -0.5);
        // zero-length core collapses to a ball
        let b = Domain::stadium(Vec2::new(0.5, 0.5), Vec2::new(0.5, 0.5), 2.0).unwrap();
        assert!(matches!(b, Domain::Ball { .. }));
    }

    #[test]
    fn square_signed_distance() {
        let d = square2();
        assert_relative_eq!(d.sd(Vec2::ZERO), 1.0);
        assert_relative_eq!(d.sd(Vec2::new(0.5, 0.0)), 0.5);
        assert_relative_eq!(d.sd(Vec2::new(2.0, 2.0)), -(2.0f64.sqrt()));
    }

    #[test]
    fn inradius_per_shape() {
        assert_eq!(Domain::ball(Vec2::ZERO, 2.0).unwrap().inradius(), 2.0);
        assert_eq!(
            Domain::ellipse(Vec2::ZERO, 1.5, 1.0).unwrap().inradius(),
            1.0
        );
        assert_relative_eq!(square2().inradius(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn web_function_values() {
        let d = unit_ball();
        // center value is c0 itself
        assert_relative_eq!(d.web_function(Vec2::ZERO).unwrap(), C0, epsilon = 1e-12);
        // boundary value is 0
        assert_relative_eq!(
            d.web_function(Vec2::new(1.0, 0.0)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // at boundary distance 0.488: c0 (1 - 0.512^(4/3)), and 0.512^(4/3) = 0.8^4
        let p = Vec2::new(0.512, 0.0);
        let expect = C0 * (1.0 - 0.8f64.powi(4));
        assert_relative_eq!(d.web_function(p).unwrap(), expect, epsilon = 1e-12);
        assert_relative_eq!(expect, 0.63866, epsilon = 1e-4);
        // outside the closure is an error
        assert!(d.web_function(Vec2::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn c0_matches_definition() {
        assert_relative_eq!(C0, 3.0f64.powf(4.0 / 3.0) / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn polygon_validation_rejects_bad_input() {
        // clockwise square
        assert!(Domain::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, -1.0),
        ])
        .is_err());
        // collinear triple
        assert!(Domain::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ])
        .is_err());
    }

    #[test]
    fn boundary_points_lie_on_boundary() {
        for domain in [
            unit_ball(),
            Domain::stadium(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 1.0).unwrap(),
            Domain::ellipse(Vec2::ZERO, 1.5, 1.0).unwrap(),
            square2(),
        ] {
            for k in 0..97 {
                let s = k as f64 / 97.0;
                let (q, nrm) = domain.boundary_point(s);
                assert!(
                    domain.sd(q).abs() < 1e-9,
                    "{} s={s}: sd={}",
                    domain.shape_name(),
                    domain.sd(q)
                );
                // inward normal: stepping inside increases distance
                let eps = 1e-6;
                assert!(
                    domain.sd(q + nrm * eps) > domain.sd(q) + 0.5 * eps,
                    "{} s={s}: normal not inward",
                    domain.shape_name()
                );
            }
        }
    }

    #[test]
    fn domain_spec_round_trip() {
        let json = r#"{"shape":"ellipse","center":[0.0,0.0],"semi_axis_a":1.5,"semi_axis_b":1.0}"#;
        let spec: DomainSpec = serde_json::from_str(json).unwrap();
        let d = Domain::from_spec(&spec).unwrap();
        assert_eq!(d.inradius(), 1.0);
        let spec2 = d.to_spec();
        let d2 = Domain::from_spec(&spec2).unwrap();
        assert_eq!(d, d2);
    }

    proptest! {
        #[test]
        fn signed_distance_is_1_lipschitz(
            px in -3.0f64..3.0, py in -3.0f64..3.0,
            qx in -3.0f64..3.0, qy in -3.0f64..3.0,
            which in 0usize..4,
        ) {
            let domain = match which {
                0 => unit_ball(),
                1 => Domain::stadium(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 1.0).unwrap(),
                2 => Domain::ellipse(Vec2::ZERO, 1.5, 1.0).unwrap(),
                _ => square2(),
            };
            let p = Vec2::new(px, py);
            let q = Vec2::new(qx, qy);
            let lhs = (domain.sd(p) - domain.sd(q)).abs();
            prop_assert!(lhs <= p.dist(q) + 1e-9);
        }
    }
}
