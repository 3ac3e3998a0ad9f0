//! Nearest-boundary-point probes.
//!
//! A probe finds every boundary point realizing (up to a distance slack) the
//! minimum distance from a query point, deduplicated by the angle the
//! candidates subtend at the query. Singular points of the distance function
//! are exactly those with two contacts subtending a positive angle.

use super::{ellipse, Domain};
use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Number of boundary parameter samples used to bracket local minima.
const BOUNDARY_SAMPLES: usize = 2048;

#[derive(Clone, Debug)]
pub struct DistanceProbe {
    pub point: Vec2,
    /// Unsigned distance to the boundary.
    pub distance: f64,
    /// Contact points within `dist_slack` of the minimum, separated
    /// pairwise by more than `angular_tol` as seen from `point`.
    pub nearest: Vec<Vec2>,
}

impl DistanceProbe {
    /// Maximum angle (radians) subtended at the query point by two contacts.
    pub fn max_subtended_angle(&self) -> f64 {
        let mut worst = 0.0f64;
        for (k, &a) in self.nearest.iter().enumerate() {
            for &b in &self.nearest[k + 1..] {
                if let (Some(da), Some(db)) = ((a - self.point).unit(), (b - self.point).unit()) {
                    worst = worst.max(da.dot(db).clamp(-1.0, 1.0).acos());
                }
            }
        }
        worst
    }

    /// True when two contacts subtend more than `angular_tol`: the point is
    /// (numerically) on the cut locus.
    pub fn is_singular(&self, angular_tol: f64) -> bool {
        self.max_subtended_angle() > angular_tol
    }
}

/// Probes the boundary of `domain` from `point`.
///
/// `dist_slack` widens the family of accepted contacts from exact minimizers
/// to near-minimizers (needed to detect cut-locus proximity from off-locus
/// grid nodes); `angular_tol` deduplicates contacts by direction.
pub fn distance_probe(
    domain: &Domain,
    point: Vec2,
    angular_tol: f64,
    dist_slack: f64,
) -> Result<DistanceProbe> {
    if !point.is_finite() {
        return Err(Error::InvalidInput("non-finite probe point".into()));
    }

    // The ellipse has an exact multi-contact projection; use it directly.
    if let Domain::Ellipse { center, a, b } = domain {
        let (d, pts) = ellipse::nearest_points(*center, *a, *b, point);
        let nearest = dedup_by_angle(point, pts, angular_tol);
        return Ok(DistanceProbe {
            point,
            distance: d,
            nearest,
        });
    }

    let dist = |s: f64| -> f64 {
        let (q, _) = domain.boundary_point(s);
        q.dist(point)
    };

    let n = BOUNDARY_SAMPLES;
    let vals: Vec<f64> = (0..n).map(|k| dist(k as f64 / n as f64)).collect();
    let dmin_sampled = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let dmax_sampled = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = domain.bbox_diag();

    // Constant-distance plateau (e.g. the center of a ball): every boundary
    // point is a contact; return spaced representatives.
    if dmax_sampled - dmin_sampled <= 1e-12 * scale {
        let reps = (0..8)
            .map(|k| domain.boundary_point(k as f64 / 8.0).0)
            .collect();
        return Ok(DistanceProbe {
            point,
            distance: dmin_sampled,
            nearest: reps,
        });
    }

    // Bracketed local minima of the cyclic sampled distance, golden-section
    // refined. Ties over short plateaus collapse to their run center.
    let tie = 1e-13 * scale;
    let mut minima: Vec<(f64, f64)> = Vec::new(); // (s, d)
    for k in 0..n {
        let prev = vals[(k + n - 1) % n];
        let next = vals[(k + 1) % n];
        let v = vals[k];
        let is_min = v <= prev + tie && v <= next + tie && (v < prev - tie || v < next - tie);
        // strictly flat runs are handled by the plateau branch above for
        // full circles; short flats still produce one representative here
        let is_flat_rep = v <= prev + tie && v <= next + tie && v < dmin_sampled + tie;
        if is_min || is_flat_rep {
            let lo = (k as f64 - 1.0) / n as f64;
            let hi = (k as f64 + 1.0) / n as f64;
            let (s_ref, d_ref) = golden_min(&dist, lo, hi);
            minima.push((s_ref, d_ref));
        }
    }

    let dmin = minima
        .iter()
        .map(|&(_, d)| d)
        .fold(f64::INFINITY, f64::min);
    let mut contacts: Vec<Vec2> = Vec::new();
    let mut sorted = minima;
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    for (s, d) in sorted {
        if d <= dmin + dist_slack {
            contacts.push(domain.boundary_point(s).0);
        }
    }
    let nearest = dedup_by_angle(point, contacts, angular_tol);
    Ok(DistanceProbe {
        point,
        distance: dmin,
        nearest,
    })
}

/// Keeps at most one contact per angular sector of width `angular_tol`
/// around the query point (closest wins; input must be sorted by distance).
fn dedup_by_angle(point: Vec2, candidates: Vec<Vec2>, angular_tol: f64) -> Vec<Vec2> {
    let mut kept: Vec<Vec2> = Vec::new();
    for c in candidates {
        let dir_c = match (c - point).unit() {
            Some(d) => d,
            None => {
                // query point on the boundary: it is its own unique contact
                return vec![point];
            }
        };
        let dup = kept.iter().any(|&k| {
            (k - point)
                .unit()
                .map(|dk| dk.dot(dir_c).clamp(-1.0, 1.0).acos() <= angular_tol)
                .unwrap_or(false)
        });
        if !dup {
            kept.push(c);
        }
    }
    kept
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let s = 0.5 * (lo + hi);
    (s, f(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ball_interior_point_has_single_contact() {
        let d = Domain::ball(Vec2::ZERO, 1.0).unwrap();
        let p = Vec2::new(0.3, 0.1);
        let probe = distance_probe(&d, p, 0.2, 1e-9).unwrap();
        assert_eq!(probe.nearest.len(), 1);
        assert_relative_eq!(probe.distance, 1.0 - p.norm(), epsilon = 1e-9);
        assert_relative_eq!(
            probe.nearest[0].dist(p),
            probe.distance,
            epsilon = 1e-9
        );
        assert!(!probe.is_singular(0.2));
    }

    #[test]
    fn ball_center_is_a_plateau() {
        let d = Domain::ball(Vec2::ZERO, 1.0).unwrap();
        let probe = distance_probe(&d, Vec2::ZERO, 0.2, 1e-9).unwrap();
        assert!(probe.nearest.len() >= 2);
        assert!(probe.is_singular(0.2));
        for q in &probe.nearest {
            assert_relative_eq!(q.norm(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn stadium_core_point_sees_two_sides() {
        let d = Domain::stadium(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 1.0).unwrap();
        let probe = distance_probe(&d, Vec2::new(0.25, 0.0), 0.2, 1e-9).unwrap();
        assert_relative_eq!(probe.distance, 1.0, epsilon = 1e-6);
        assert_eq!(probe.nearest.len(), 2);
        let ys: Vec<f64> = probe.nearest.iter().map(|q| q.y).collect();
        assert!(ys.iter().any(|&y| y > 0.9) && ys.iter().any(|&y| y < -0.9));
        assert!(probe.is_singular(0.2));
    }

    #[test]
    fn square_diagonal_point_is_singular() {
        let d = Domain::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap();
        let probe = distance_probe(&d, Vec2::new(0.4, 0.4), 0.2, 1e-9).unwrap();
        assert!(probe.is_singular(0.2), "contacts: {:?}", probe.nearest);
        let off = distance_probe(&d, Vec2::new(0.4, 0.1), 0.2, 1e-9).unwrap();
        assert!(!off.is_singular(0.2));
    }

    #[test]
    fn ellipse_center_contacts_are_poles() {
        let d = Domain::ellipse(Vec2::ZERO, 1.5, 1.0).unwrap();
        let probe = distance_probe(&d, Vec2::ZERO, 0.2, 1e-9).unwrap();
        assert_eq!(probe.nearest.len(), 2);
        assert_relative_eq!(probe.distance, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn rejects_non_finite_point() {
        let d = Domain::ball(Vec2::ZERO, 1.0).unwrap();
        assert!(distance_probe(&d, Vec2::new(f64::INFINITY, 0.0), 0.2, 1e-9).is_err());
    }
}
