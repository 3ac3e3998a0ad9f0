//! Largest inscribed circle of a convex polygon.
//!
//! Solved exactly as the linear program `max t` s.t. `n_i . x + t <= c_i`
//! by enumerating basic solutions (triples of active edge constraints);
//! the optimal set is a point or a segment of centers.

use super::polygon_edges;
use crate::vec2::Vec2;

pub struct InscribedCircle {
    pub radius: f64,
    /// All optimal centers found; collinear (a point or a segment).
    pub centers: Vec<Vec2>,
}

fn solve3(
    e0: (Vec2, f64),
    e1: (Vec2, f64),
    e2: (Vec2, f64),
) -> Option<(Vec2, f64)> {
    // rows: n_k.x * x + n_k.y * y + t = c_k
    let m = [
        [e0.0.x, e0.0.y, 1.0],
        [e1.0.x, e1.0.y, 1.0],
        [e2.0.x, e2.0.y, 1.0],
    ];
    let rhs = [e0.1, e1.1, e2.1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-14 {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut sol = [0.0f64; 3];
    for (k, s) in sol.iter_mut().enumerate() {
        let mut mm = m;
        for r in 0..3 {
            mm[r][k] = rhs[r];
        }
        *s = inv_det
            * (mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1])
                - mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0])
                + mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0]));
    }
    Some((Vec2::new(sol[0], sol[1]), sol[2]))
}

pub fn inscribed_circle(vertices: &[Vec2]) -> InscribedCircle {
    let edges = polygon_edges(vertices);
    let m = edges.len();
    let scale = vertices
        .iter()
        .map(|v| v.norm())
        .fold(1.0f64, f64::max);
    let feas_tol = 1e-9 * scale;

    let mut best_t = f64::NEG_INFINITY;
    let mut centers: Vec<Vec2> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let Some((x, t)) = solve3(edges[i], edges[j], edges[k]) else {
                    continue;
                };
                if t <= 0.0 {
                    continue;
                }
                let feasible = edges
                    .iter()
                    .all(|(n, c)| n.dot(x) + t <= c + feas_tol);
                if !feasible {
                    continue;
                }
                if t > best_t + feas_tol {
                    best_t = t;
                    centers.clear();
                    centers.push(x);
                } else if t >= best_t - feas_tol {
                    if !centers.iter().any(|c| c.dist(x) <= feas_tol) {
                        centers.push(x);
                    }
                }
            }
        }
    }
    InscribedCircle {
        radius: best_t,
        centers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn square_incircle() {
        let v = vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ];
        let c = inscribed_circle(&v);
        assert_relative_eq!(c.radius, 1.0, epsilon = 1e-9);
        for x in &c.centers {
            assert!(x.norm() < 1e-9);
        }
    }

    #[test]
    fn rectangle_incircle_is_a_segment() {
        let v = vec![
            Vec2::new(-2.0, -1.0),
            Vec2::new(2.0, -1.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(-2.0, 1.0),
        ];
        let c = inscribed_circle(&v);
        assert_relative_eq!(c.radius, 1.0, epsilon = 1e-9);
        let xs: Vec<f64> = c.centers.iter().map(|p| p.x).collect();
        let xmin = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let xmax = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_relative_eq!(xmin, -1.0, epsilon = 1e-9);
        assert_relative_eq!(xmax, 1.0, epsilon = 1e-9);
        assert!(c.centers.iter().all(|p| p.y.abs() < 1e-9));
    }

    #[test]
    fn triangle_incircle_radius() {
        // 3-4-5 right triangle: r = (3 + 4 - 5)/2 = 1
        let v = vec![Vec2::ZERO, Vec2::new(4.0, 0.0), Vec2::new(0.0, 3.0)];
        let c = inscribed_circle(&v);
        assert_relative_eq!(c.radius, 1.0, epsilon = 1e-9);
        assert_relative_eq!(c.centers[0].x, 1.0, epsilon = 1e-9);
        assert_relative_eq!(c.centers[0].y, 1.0, epsilon = 1e-9);
    }
}
