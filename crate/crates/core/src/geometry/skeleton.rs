//! Straight skeleton of a strictly convex polygon.
//!
//! The inward wavefront of a convex polygon only undergoes edge-collapse
//! events, so the skeleton is the tree of segments traced by wavefront
//! vertices between events. Vertices are intersections of inward-offset
//! edge lines; a collapse instant solves the 3x3 system where three offset
//! lines become concurrent.

use crate::vec2::Vec2;

#[derive(Clone, Copy)]
struct Edge {
    n: Vec2, // outward unit normal
    c: f64,  // n . x = c on the original edge line
}

/// Wavefront vertex between two adjacent active edges.
#[derive(Clone, Copy)]
struct Vertex {
    born_at: Vec2,
}

fn vertex_position(a: Edge, b: Edge, t: f64) -> Option<Vec2> {
    let det = a.n.cross(b.n);
    if det.abs() < 1e-14 {
        return None;
    }
    let ra = a.c - t;
    let rb = b.c - t;
    Some(Vec2::new(
        (ra * b.n.y - rb * a.n.y) / det,
        (a.n.x * rb - b.n.x * ra) / det,
    ))
}

/// Time and point at which the middle of three consecutive edges collapses
/// (the three offset lines concur).
fn collapse_event(prev: Edge, mid: Edge, next: Edge, t_now: f64) -> Option<(f64, Vec2)> {
    // rows: n.x * x + n.y * y + t = c
    let m = [
        [prev.n.x, prev.n.y, 1.0],
        [mid.n.x, mid.n.y, 1.0],
        [next.n.x, next.n.y, 1.0],
    ];
    let rhs = [prev.c, mid.c, next.c];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-14 {
        return None;
    }
    let inv = 1.0 / det;
    let mut sol = [0.0f64; 3];
    for (k, s) in sol.iter_mut().enumerate() {
        let mut mm = m;
        for r in 0..3 {
            mm[r][k] = rhs[r];
        }
        *s = inv
            * (mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1])
                - mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0])
                + mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0]));
    }
    let t = sol[2];
    if t < t_now - 1e-12 {
        return None;
    }
    Some((t, Vec2::new(sol[0], sol[1])))
}

/// Computes the skeleton as a list of segments (plus, for stadium-like
/// collapses, the terminal core segment).
pub fn straight_skeleton(vertices: &[Vec2]) -> Vec<(Vec2, Vec2)> {
    let n = vertices.len();
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    let eps = 1e-9 * scale;

    let edges: Vec<Edge> = super::polygon_edges(vertices)
        .into_iter()
        .map(|(n, c)| Edge { n, c })
        .collect();

    // active[i] indexes into `edges`, cyclic; verts[i] sits between
    // active[i] and active[i+1].
    let mut active: Vec<usize> = (0..n).collect();
    let mut verts: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            born_at: vertices[(i + 1) % n],
        })
        .collect();

    let mut segments: Vec<(Vec2, Vec2)> = Vec::new();
    let mut t_now = 0.0f64;
    let mut push_seg = |a: Vec2, b: Vec2| {
        if a.dist(b) > eps {
            segments.push((a, b));
        }
    };

    loop {
        let m = active.len();
        if m < 3 {
            break;
        }
        // earliest collapse among active edges
        let mut t_min = f64::INFINITY;
        let mut events: Vec<(usize, f64, Vec2)> = Vec::new();
        for k in 0..m {
            let prev = edges[active[(k + m - 1) % m]];
            let mid = edges[active[k]];
            let next = edges[active[(k + 1) % m]];
            if let Some((t, p)) = collapse_event(prev, mid, next, t_now) {
                events.push((k, t, p));
                t_min = t_min.min(t);
            }
        }
        if !t_min.is_finite() {
            break; // only parallel pairs remain
        }
        let simultaneous: Vec<(usize, f64, Vec2)> = events
            .into_iter()
            .filter(|&(_, t, _)| t <= t_min + eps)
            .collect();

        // Record the two dying vertex paths per collapsing edge.
        let mut dying = vec![false; m];
        for &(k, _, p) in &simultaneous {
            let v_before = verts[(k + m - 1) % m];
            let v_after = verts[k];
            push_seg(v_before.born_at, p);
            push_seg(v_after.born_at, p);
            dying[k] = true;
        }

        // Rebuild the active list; new vertices are born at event points.
        let mut new_active: Vec<usize> = Vec::new();
        let mut new_verts: Vec<Vertex> = Vec::new();
        for k in 0..m {
            if dying[k] {
                continue;
            }
            new_active.push(active[k]);
        }
        let mm = new_active.len();
        if mm >= 3 {
            for k in 0..mm {
                let e0 = edges[new_active[k]];
                let e1 = edges[new_active[(k + 1) % mm]];
                let pos = vertex_position(e0, e1, t_min)
                    .expect("adjacent active edges cannot be parallel while >= 3 remain");
                new_verts.push(Vertex { born_at: pos });
            }
        } else if mm == 2 {
            // Terminal wavefront degenerated to a segment between the
            // outermost simultaneous event points (stadium-like core).
            let pts: Vec<Vec2> = simultaneous.iter().map(|&(_, _, p)| p).collect();
            let mut far = (pts[0], pts[0], 0.0f64);
            for &a in &pts {
                for &b in &pts {
                    let d = a.dist(b);
                    if d > far.2 {
                        far = (a, b, d);
                    }
                }
            }
            push_seg(far.0, far.1);
        }
        active = new_active;
        verts = new_verts;
        t_now = t_min;
        if active.len() < 3 {
            break;
        }
    }
    segments
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seg_dist(p: Vec2, a: Vec2, b: Vec2) -> f64 {
        super::super::dist_to_segment(p, a, b)
    }

    #[test]
    fn square_skeleton_is_the_diagonals() {
        let v = vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ];
        let sk = straight_skeleton(&v);
        assert_eq!(sk.len(), 4);
        // each segment runs corner -> center
        for (a, b) in &sk {
            let (corner, center) = if a.norm() > b.norm() { (a, b) } else { (b, a) };
            assert!(center.norm() < 1e-9);
            assert_relative_eq!(corner.x.abs(), 1.0, epsilon = 1e-9);
            assert_relative_eq!(corner.y.abs(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn rectangle_skeleton_has_core_segment() {
        let v = vec![
            Vec2::new(-2.0, -1.0),
            Vec2::new(2.0, -1.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(-2.0, 1.0),
        ];
        let sk = straight_skeleton(&v);
        // 4 corner branches + the core
        assert_eq!(sk.len(), 5);
        let core = sk
            .iter()
            .find(|(a, b)| a.y.abs() < 1e-9 && b.y.abs() < 1e-9)
            .expect("core segment");
        let (lo, hi) = (core.0.x.min(core.1.x), core.0.x.max(core.1.x));
        assert_relative_eq!(lo, -1.0, epsilon = 1e-9);
        assert_relative_eq!(hi, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn triangle_skeleton_meets_at_incenter() {
        let v = vec![Vec2::ZERO, Vec2::new(4.0, 0.0), Vec2::new(0.0, 3.0)];
        let sk = straight_skeleton(&v);
        assert_eq!(sk.len(), 3);
        let incenter = Vec2::new(1.0, 1.0);
        for (a, b) in &sk {
            let end = if seg_dist(incenter, *a, *a) < seg_dist(incenter, *b, *b) {
                a
            } else {
                b
            };
            assert!(end.dist(incenter) < 1e-9);
        }
    }

    #[test]
    fn skeleton_points_are_equidistant_from_two_edges() {
        // medial-axis property on a generic convex pentagon
        let v = vec![
            Vec2::new(0.0, -1.2),
            Vec2::new(1.4, -0.3),
            Vec2::new(0.9, 1.1),
            Vec2::new(-0.8, 1.3),
            Vec2::new(-1.3, -0.2),
        ];
        let d = crate::geometry::Domain::polygon(v.clone()).unwrap();
        let sk = straight_skeleton(&v);
        assert!(!sk.is_empty());
        let edges = crate::geometry::polygon_edges(&v);
        for (a, b) in &sk {
            for t in [0.25, 0.5, 0.75] {
                let p = a.lerp(*b, t);
                let mut slacks: Vec<f64> = edges.iter().map(|(n, c)| c - n.dot(p)).collect();
                slacks.sort_by(|x, y| x.partial_cmp(y).unwrap());
                // distance to the two nearest edge lines agrees
                assert!(
                    (slacks[0] - slacks[1]).abs() < 1e-9,
                    "point {p:?} slacks {slacks:?}"
                );
                assert!(d.sd(p) > 0.0);
            }
        }
    }
}
