//! Uniform Cartesian discretization of a domain: masks, cut-cell boundary
//! fractions, fields, discrete operators, and persistence.

mod concavity;
mod envelope;
mod field;
mod io;
mod masks;

pub use concavity::{midpoint_concavity_deficit, ConcavityReport};
pub use envelope::convex_envelope;
pub use field::{GhostPolicy, ScalarField, VectorField};
pub use io::{read_field, write_field, RawField};
pub use masks::{cut_locus_mask, high_ridge_mask};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::vec2::Vec2;

/// Cut fraction floor: boundary crossings closer than this fraction of `h`
/// to a node are clamped for stencil conditioning.
pub const THETA_MIN: f64 = 1e-6;

/// Ghost band reach in units of `h` (outside nodes farther than this from
/// the boundary stay zero).
const GHOST_BAND: f64 = 3.5;

/// Ghost values saturate at this boundary distance (in units of `h`).
const GHOST_SD_CAP: f64 = 2.5;

/// Feeder depth floor (units of `h`): ghosts are extrapolated from nodes at
/// least this deep, so the shallow first layer cannot amplify itself
/// through its own ghosts.
const GHOST_FEEDER_MIN_DEPTH: f64 = 0.5;

/// Axis directions used for boundary-band bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis4 {
    XPlus = 0,
    XMinus = 1,
    YPlus = 2,
    YMinus = 3,
}

pub const AXES4: [Axis4; 4] = [Axis4::XPlus, Axis4::XMinus, Axis4::YPlus, Axis4::YMinus];

impl Axis4 {
    pub fn offset(self) -> (i64, i64) {
        match self {
            Axis4::XPlus => (1, 0),
            Axis4::XMinus => (-1, 0),
            Axis4::YPlus => (0, 1),
            Axis4::YMinus => (0, -1),
        }
    }
}

/// Uniform node lattice covering a domain with a two-node margin.
///
/// Node `(i, j)` sits at `origin + (i h, j h)`; storage is row-major in `j`.
#[derive(Debug)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: Vec2,
    /// Signed distance at every node.
    sd: Vec<f64>,
    inside: Vec<bool>,
    /// For inside nodes with an outside 4-neighbor: cut fraction
    /// `theta in (0, 1]` toward that neighbor (NaN when not applicable).
    theta: Vec<[f64; 4]>,
    /// Outside band nodes and their (inside feeder index, theta) pairs used
    /// for linear ghost extrapolation.
    ghost_feeds: Vec<(u32, Vec<(u32, f64)>)>,
    /// Indices of inside nodes (row-major order).
    inside_ids: Vec<u32>,
}

impl Grid {
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(
            self.origin.x + self.h * i as f64,
            self.origin.y + self.h * j as f64,
        )
    }

    #[inline]
    pub fn node_of(&self, idx: usize) -> Vec2 {
        self.node(idx % self.nx, idx / self.nx)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn is_inside(&self, idx: usize) -> bool {
        self.inside[idx]
    }

    #[inline]
    pub fn sd_at(&self, idx: usize) -> f64 {
        self.sd[idx]
    }

    #[inline]
    pub fn theta_at(&self, idx: usize) -> &[f64; 4] {
        &self.theta[idx]
    }

    pub fn inside_ids(&self) -> &[u32] {
        &self.inside_ids
    }

    pub fn inside_count(&self) -> usize {
        self.inside_ids.len()
    }

    pub fn ghost_feeds(&self) -> &[(u32, Vec<(u32, f64)>)] {
        &self.ghost_feeds
    }

    /// Fills `ext` with `values` on inside nodes, linear-extrapolation
    /// ghosts on the outside band, and 0 elsewhere. `ext` must have grid
    /// length. This is the sampling array for Dirichlet-aware probing.
    pub fn extend_with_ghosts(&self, values: &[f64], ext: &mut [f64]) {
        debug_assert_eq!(values.len(), self.len());
        debug_assert_eq!(ext.len(), self.len());
        for (e, (&v, &ins)) in ext
            .iter_mut()
            .zip(values.iter().zip(self.inside.iter()))
        {
            *e = if ins { v } else { 0.0 };
        }
        for (out_idx, feeds) in &self.ghost_feeds {
            let mut acc = 0.0;
            for &(in_idx, th) in feeds {
                let t = th.max(GHOST_THETA_MIN);
                acc += values[in_idx as usize] * (t - 1.0) / t;
            }
            ext[*out_idx as usize] = acc / feeds.len() as f64;
        }
    }

    /// Raw bilinear interpolation on a full-grid array (caller guarantees
    /// the array is finite, e.g. from [`Grid::extend_with_ghosts`]).
    #[inline]
    pub fn bilinear_raw(&self, ext: &[f64], p: Vec2) -> f64 {
        let fx = (p.x - self.origin.x) / self.h;
        let fy = (p.y - self.origin.y) / self.h;
        let i = (fx.floor() as i64).clamp(0, self.nx as i64 - 2) as usize;
        let j = (fy.floor() as i64).clamp(0, self.ny as i64 - 2) as usize;
        let ax = fx - i as f64;
        let ay = fy - j as f64;
        let base = self.index(i, j);
        let v00 = ext[base];
        let v10 = ext[base + 1];
        let v01 = ext[base + self.nx];
        let v11 = ext[base + self.nx + 1];
        v00 * (1.0 - ax) * (1.0 - ay)
            + v10 * ax * (1.0 - ay)
            + v01 * (1.0 - ax) * ay
            + v11 * ax * ay
    }
}

/// Builds the lattice for `domain`: `h = (longest bbox side)/resolution`,
/// masks from the signed distance, cut fractions by bisection to
/// `1e-10 * h`.
pub fn build_grid(domain: &Domain, resolution: usize) -> Result<Arc<Grid>> {
    if resolution < 16 {
        return Err(Error::Configuration(format!(
            "resolution {resolution} < 16"
        )));
    }
    let (lo, hi) = domain.bbox();
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let h = span / resolution as f64;
    let rho = domain.inradius();
    if rho < 4.0 * h {
        return Err(Error::Configuration(format!(
            "resolution {resolution} cannot resolve the inradius: rho = {rho:.6} < 4h = {:.6}",
            4.0 * h
        )));
    }
    let origin = Vec2::new(lo.x - 2.0 * h, lo.y - 2.0 * h);
    let nx = ((hi.x - lo.x) / h).ceil() as usize + 5;
    let ny = ((hi.y - lo.y) / h).ceil() as usize + 5;

    let mut sd = vec![0.0f64; nx * ny];
    let mut inside = vec![false; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let p = Vec2::new(origin.x + h * i as f64, origin.y + h * j as f64);
            let d = domain.sd(p);
            sd[j * nx + i] = d;
            inside[j * nx + i] = d > 0.0;
        }
    }

    let mut theta = vec![[f64::NAN; 4]; nx * ny];
    let mut inside_ids = Vec::new();
    let mut ghost_map: std::collections::BTreeMap<u32, Vec<(u32, f64)>> =
        std::collections::BTreeMap::new();
    for j in 0..ny {
        for i in 0..nx {
            let idx = j * nx + i;
            if !inside[idx] {
                continue;
            }
            inside_ids.push(idx as u32);
            let p = Vec2::new(origin.x + h * i as f64, origin.y + h * j as f64);
            for (k, ax) in AXES4.iter().enumerate() {
                let (di, dj) = ax.offset();
                let ii = i as i64 + di;
                let jj = j as i64 + dj;
                let out_of_grid = ii < 0 || jj < 0 || ii >= nx as i64 || jj >= ny as i64;
                let nb_inside =
                    !out_of_grid && inside[(jj as usize) * nx + ii as usize];
                if nb_inside {
                    continue;
                }
                let dir = Vec2::new(di as f64, dj as f64);
                let th = bisect_theta(domain, p, dir, h);
                theta[idx][k] = th;
                if !out_of_grid {
                    let out_idx = ((jj as usize) * nx + ii as usize) as u32;
                    ghost_map
                        .entry(out_idx)
                        .or_default()
                        .push((idx as u32, th));
                }
            }
        }
    }

    let grid = Grid {
        nx,
        ny,
        h,
        origin,
        sd,
        inside,
        theta,
        ghost_feeds: ghost_map.into_iter().collect(),
        inside_ids,
    };

    // Every inside node must keep a usable stencil in each axis: either an
    // inside neighbor or a boundary crossing toward the outside one.
    for &idx in &grid.inside_ids {
        let t = &grid.theta[idx as usize];
        debug_assert!(
            t.iter().all(|v| v.is_nan() || (*v > 0.0 && *v <= 1.0)),
            "theta out of range at node {idx}"
        );
    }
    Ok(Arc::new(grid))
}

/// Root of the signed distance along `p + s * dir * h`, `s in (0, 1]`,
/// bracketed by construction (sd(p) > 0, sd(p + dir h) <= 0).
fn bisect_theta(domain: &Domain, p: Vec2, dir: Vec2, h: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    // 50 halvings: interval 1e-15 < 1e-10 required accuracy
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if domain.sd(p + dir * (h * mid)) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).max(THETA_MIN)
}
