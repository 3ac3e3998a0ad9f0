//! Exact cut-locus and high-ridge descriptions, and the geometric verdicts
//! built on them.
//!
//! For the shapes here both loci are points or segments (polygon cut loci
//! are straight-skeleton segment trees); comparisons are Hausdorff distances
//! between dense samples.

use super::{distance_probe, incircle, skeleton, Domain};
use crate::vec2::Vec2;

/// A closed point set described by segments (a point is a degenerate
/// segment set).
#[derive(Clone, Debug)]
pub enum Locus {
    Point(Vec2),
    Segment(Vec2, Vec2),
    Segments(Vec<(Vec2, Vec2)>),
}

impl Locus {
    pub fn sample(&self, n: usize) -> Vec<Vec2> {
        match self {
            Locus::Point(p) => vec![*p],
            Locus::Segment(a, b) => sample_segment(*a, *b, n.max(2)),
            Locus::Segments(segs) => {
                let total: f64 = segs.iter().map(|(a, b)| a.dist(*b)).sum();
                if total <= 0.0 {
                    return segs.iter().map(|(a, _)| *a).collect();
                }
                let mut out = Vec::new();
                for (a, b) in segs {
                    let len = a.dist(*b);
                    let k = ((n as f64 * len / total).ceil() as usize).max(2);
                    out.extend(sample_segment(*a, *b, k));
                }
                out
            }
        }
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        match self {
            Locus::Point(q) => p.dist(*q),
            Locus::Segment(a, b) => super::dist_to_segment(p, *a, *b),
            Locus::Segments(segs) => segs
                .iter()
                .map(|(a, b)| super::dist_to_segment(p, *a, *b))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn is_point(&self, tol: f64) -> bool {
        match self {
            Locus::Point(_) => true,
            Locus::Segment(a, b) => a.dist(*b) <= tol,
            Locus::Segments(segs) => {
                let pts = self.sample(16);
                segs.is_empty()
                    || pts
                        .iter()
                        .all(|p| p.dist(pts[0]) <= tol)
            }
        }
    }
}

fn sample_segment(a: Vec2, b: Vec2, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|k| a.lerp(b, k as f64 / (n - 1) as f64))
        .collect()
}

/// Symmetric Hausdorff distance between two finite samples.
pub fn hausdorff_distance(a: &[Vec2], b: &[Vec2]) -> f64 {
    let one_sided = |s: &[Vec2], t: &[Vec2]| -> f64 {
        s.iter()
            .map(|p| t.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// The set where the boundary distance attains the inradius.
pub fn high_ridge(domain: &Domain) -> Locus {
    match domain {
        Domain::Ball { center, .. } => Locus::Point(*center),
        Domain::Stadium { p0, p1, .. } => Locus::Segment(*p0, *p1),
        Domain::Ellipse { center, .. } => Locus::Point(*center),
        Domain::Polygon { vertices } => {
            let circ = incircle::inscribed_circle(vertices);
            let scale = domain.bbox_diag();
            if circ.centers.len() <= 1 {
                Locus::Point(circ.centers[0])
            } else {
                // optimal centers are collinear: take the extreme pair
                let mut far = (circ.centers[0], circ.centers[0], 0.0f64);
                for &a in &circ.centers {
                    for &b in &circ.centers {
                        let d = a.dist(b);
                        if d > far.2 {
                            far = (a, b, d);
                        }
                    }
                }
                if far.2 <= 1e-9 * scale {
                    Locus::Point(far.0)
                } else {
                    Locus::Segment(far.0, far.1)
                }
            }
        }
    }
}

/// The closure of the set where the boundary distance is not differentiable.
pub fn cut_locus(domain: &Domain) -> Locus {
    match domain {
        Domain::Ball { center, .. } => Locus::Point(*center),
        Domain::Stadium { p0, p1, .. } => Locus::Segment(*p0, *p1),
        Domain::Ellipse { center, a, b } => {
            let reach = (a * a - b * b) / a;
            if reach <= 1e-12 * (a + b) {
                Locus::Point(*center)
            } else {
                Locus::Segment(
                    *center - Vec2::new(reach, 0.0),
                    *center + Vec2::new(reach, 0.0),
                )
            }
        }
        Domain::Polygon { vertices } => Locus::Segments(skeleton::straight_skeleton(vertices)),
    }
}

#[derive(Clone, Debug)]
pub struct CutHighVerdict {
    pub equal: bool,
    pub hausdorff: f64,
}

/// Compares the sampled cut locus and high ridge in Hausdorff distance.
pub fn cut_equals_high_ridge(domain: &Domain, hausdorff_tol: f64) -> CutHighVerdict {
    let cut = cut_locus(domain).sample(512);
    let ridge = high_ridge(domain).sample(512);
    let hd = hausdorff_distance(&cut, &ridge);
    CutHighVerdict {
        equal: hd <= hausdorff_tol,
        hausdorff: hd,
    }
}

#[derive(Clone, Debug)]
pub struct DiametralBall {
    pub found: bool,
    /// Two boundary contacts of an inscribed ball of inradius size lying on
    /// a common diameter, when found.
    pub witnesses: Option<(Vec2, Vec2)>,
}

/// Searches the high ridge for an inscribed ball touching the boundary at
/// two antipodal points.
pub fn diametral_ball_check(domain: &Domain, tol: f64) -> DiametralBall {
    let ridge = high_ridge(domain);
    for z in ridge.sample(65) {
        let Ok(probe) = distance_probe(domain, z, 0.05, tol) else {
            continue;
        };
        for (i, &q1) in probe.nearest.iter().enumerate() {
            for &q2 in &probe.nearest[i + 1..] {
                let mid = (q1 + q2) * 0.5;
                if mid.dist(z) <= tol {
                    return DiametralBall {
                        found: true,
                        witnesses: Some((q1, q2)),
                    };
                }
            }
        }
    }
    DiametralBall {
        found: false,
        witnesses: None,
    }
}
