//! Nearest-point projection onto an axis-aligned ellipse.
//!
//! Distance queries reduce to the first quadrant and solve the stationarity
//! condition of the squared distance along the boundary parameter with a
//! bracketed, damped Newton iteration (bisection fallback).

use crate::vec2::Vec2;

const MAX_ITERS: usize = 60;
const RESIDUAL_TOL: f64 = 1e-12;

/// Stationarity of |(a cos t, b sin t) - (x, y)|^2 / 2 in t:
/// f(t) = (b^2 - a^2) sin t cos t + a x sin t - b y cos t.
#[inline]
fn stationarity(a: f64, b: f64, x: f64, y: f64, t: f64) -> (f64, f64) {
    let (st, ct) = t.sin_cos();
    let f = (b * b - a * a) * st * ct + a * x * st - b * y * ct;
    let fp = (b * b - a * a) * (ct * ct - st * st) + a * x * ct + b * y * st;
    (f, fp)
}

/// Nearest boundary parameter(s) for a first-quadrant point `(x, y)`,
/// x, y >= 0. Returns every global minimizer parameter in [0, pi/2]
/// (two symmetric contacts unfold at the caller via reflections).
fn quadrant_candidates(a: f64, b: f64, x: f64, y: f64) -> Vec<f64> {
    let mut cands = vec![0.0, std::f64::consts::FRAC_PI_2];
    let c2 = a * a - b * b;
    let tiny = 1e-14 * (a + b);
    if c2 > 0.0 {
        // On-axis interior stationary points (inside the evolute).
        if y <= tiny && a * x < c2 {
            cands.push((a * x / c2).acos());
        }
        if x <= tiny && b * y < c2 {
            cands.push((b * y / c2).asin());
        }
    }
    if x > tiny && y > tiny {
        // f(0) = -b y < 0 and f(pi/2) = a x > 0: bracketed root.
        let mut lo = 0.0f64;
        let mut hi = std::f64::consts::FRAC_PI_2;
        let mut t = (a * y).atan2(b * x);
        let scale = (a + b) * (a + b + x + y);
        let mut converged = false;
        for _ in 0..MAX_ITERS {
            let (f, fp) = stationarity(a, b, x, y, t);
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if f.abs() <= RESIDUAL_TOL * scale {
                converged = true;
                break;
            }
            let mut step = if fp.abs() > 0.0 { f / fp } else { f64::INFINITY };
            // Damped Newton: reject steps leaving the bracket.
            let mut tn = t - step;
            if !(tn > lo && tn < hi) {
                step = 0.0;
                tn = 0.5 * (lo + hi);
            }
            let _ = step;
            t = tn;
        }
        if !converged {
            // Bisection fallback to full precision.
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let (f, _) = stationarity(a, b, x, y, mid);
                if f > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-16 {
                    break;
                }
            }
            t = 0.5 * (lo + hi);
        }
        cands.push(t);
    }
    cands
}

/// Nearest boundary point(s) to `p` (ellipse centered at `center`).
/// Returns `(distance, contact points)`; multiple contacts for points on
/// the major axis inside the evolute (and the center).
pub fn nearest_points(center: Vec2, a: f64, b: f64, p: Vec2) -> (f64, Vec<Vec2>) {
    let q = p - center;
    let (x, y) = (q.x.abs(), q.y.abs());
    let cands = quadrant_candidates(a, b, x, y);
    let mut best = f64::INFINITY;
    let mut pts: Vec<Vec2> = Vec::new();
    let tol = 1e-10 * (a + b);
    for t in cands {
        let (st, ct) = t.sin_cos();
        let bp = Vec2::new(a * ct, b * st);
        let d = bp.dist(Vec2::new(x, y));
        if d < best - tol {
            best = d;
            pts.clear();
            pts.push(bp);
        } else if d <= best + tol {
            pts.push(bp);
        }
    }
    // Unfold quadrant reflections back to the original signs.
    let sx = if q.x < 0.0 { -1.0 } else { 1.0 };
    let sy = if q.y < 0.0 { -1.0 } else { 1.0 };
    let mut out: Vec<Vec2> = Vec::new();
    for bp in pts {
        let mut images = vec![Vec2::new(sx * bp.x, sy * bp.y)];
        // A contact on a symmetry axis of the query point mirrors across it.
        if q.x.abs() <= tol && bp.x.abs() > tol {
            images.push(Vec2::new(-images[0].x, images[0].y));
        }
        if q.y.abs() <= tol && bp.y.abs() > tol {
            let cur = images.clone();
            for im in cur {
                images.push(Vec2::new(im.x, -im.y));
            }
        }
        for im in images {
            let w = center + im;
            if !out.iter().any(|o| o.dist(w) <= tol) {
                out.push(w);
            }
        }
    }
    (best, out)
}

/// Signed distance (positive inside).
pub fn signed_distance(center: Vec2, a: f64, b: f64, p: Vec2) -> f64 {
    let q = p - center;
    let level = (q.x / a) * (q.x / a) + (q.y / b) * (q.y / b);
    let (d, _) = nearest_points(center, a, b, p);
    if level <= 1.0 {
        d
    } else {
        -d
    }
}

/// Boundary point and inward unit normal at normalized parameter `s`.
pub fn boundary_point(center: Vec2, a: f64, b: f64, s: f64) -> (Vec2, Vec2) {
    let t = 2.0 * std::f64::consts::PI * s;
    let (st, ct) = t.sin_cos();
    let p = center + Vec2::new(a * ct, b * st);
    let grad = Vec2::new(2.0 * ct / a, 2.0 * st / b);
    let n = grad.unit().expect("nonzero gradient on ellipse boundary");
    (p, -n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn center_distance_is_semi_minor() {
        let (d, pts) = nearest_points(Vec2::ZERO, 1.5, 1.0, Vec2::ZERO);
        assert_relative_eq!(d, 1.0, epsilon = 1e-12);
        // both poles are nearest
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().any(|p| (p.y - 1.0).abs() < 1e-9));
        assert!(pts.iter().any(|p| (p.y + 1.0).abs() < 1e-9));
    }

    #[test]
    fn major_axis_inside_evolute_has_two_contacts() {
        // evolute x-extent: (a^2-b^2)/a = 1.25/1.5
        let (d, pts) = nearest_points(Vec2::ZERO, 1.5, 1.0, Vec2::new(0.4, 0.0));
        assert_eq!(pts.len(), 2);
        assert!(d < 1.1 - 0.4); // strictly closer than the vertex
        for p in pts {
            assert_relative_eq!(
                (p.x / 1.5) * (p.x / 1.5) + p.y * p.y,
                1.0,
                epsilon = 1e-9
            );
            assert_relative_eq!(p.dist(Vec2::new(0.4, 0.0)), d, epsilon = 1e-9);
        }
    }

    #[test]
    fn beyond_evolute_nearest_is_vertex() {
        let cx = (1.5f64 * 1.5 - 1.0) / 1.5; // 0.8333...
        let (d, pts) = nearest_points(Vec2::ZERO, 1.5, 1.0, Vec2::new(cx + 0.3, 0.0));
        assert_eq!(pts.len(), 1);
        assert_relative_eq!(pts[0].x, 1.5, epsilon = 1e-9);
        assert_relative_eq!(d, 1.5 - (cx + 0.3), epsilon = 1e-9);
    }

    #[test]
    fn matches_dense_sampling_oracle() {
        // Brute-force oracle: min distance over many boundary points.
        let (a, b) = (1.5, 1.0);
        for &p in &[
            Vec2::new(0.3, 0.2),
            Vec2::new(1.2, 0.5),
            Vec2::new(-0.9, -0.1),
            Vec2::new(2.0, 1.5),
            Vec2::new(0.0, 0.0),
        ] {
            let mut dmin = f64::INFINITY;
            let n = 1_000_000;
            for k in 0..n {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                let q = Vec2::new(a * t.cos(), b * t.sin());
                dmin = dmin.min(q.dist(p));
            }
            let (d, _) = nearest_points(Vec2::ZERO, a, b, p);
            assert_relative_eq!(d, dmin, epsilon = 1e-9, max_relative = 1e-9);
        }
        // signed distance at the center of the 1.5 x 1.0 ellipse is exactly 1
        assert_relative_eq!(
            signed_distance(Vec2::ZERO, 1.5, 1.0, Vec2::ZERO),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn stationarity_residual_at_solution() {
        for &(x, y) in &[(0.7, 0.3), (1.4, 0.9), (0.1, 0.05)] {
            let cands = quadrant_candidates(1.5, 1.0, x, y);
            let t = *cands.last().unwrap();
            let (f, _) = stationarity(1.5, 1.0, x, y, t);
            assert!(f.abs() <= 1e-11, "residual {f} at t={t}");
        }
    }
}
