//! Node-indexed scalar and vector fields with mask-consistent NaN outside,
//! cut-cell-aware differentiation, and bilinear interpolation.

use std::sync::Arc;

use super::{Axis4, Grid};
use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// How interpolation treats NaN (outside) cell corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhostPolicy {
    /// Replace by 0 (fields vanishing on the boundary).
    DirichletZero,
    /// Replace by the value of the nearest finite corner.
    NearestInside,
}

#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl ScalarField {
    /// Builds from per-node values; outside nodes are forced to NaN.
    pub fn new(grid: Arc<Grid>, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "value count {} does not match grid {}",
                values.len(),
                grid.len()
            )));
        }
        for (idx, v) in values.iter_mut().enumerate() {
            if grid.is_inside(idx) {
                if !v.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "non-finite value at inside node {idx}"
                    )));
                }
            } else {
                *v = f64::NAN;
            }
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(Vec2) -> f64) -> Self {
        let mut values = vec![f64::NAN; grid.len()];
        for &idx in grid.inside_ids() {
            values[idx as usize] = f(grid.node_of(idx as usize));
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        let mut values = self.values.clone();
        for &idx in self.grid.inside_ids() {
            values[idx as usize] = f(values[idx as usize]);
        }
        ScalarField {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Max over inside nodes.
    pub fn max_inside(&self) -> f64 {
        self.grid
            .inside_ids()
            .iter()
            .map(|&i| self.values[i as usize])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Min over inside nodes.
    pub fn min_inside(&self) -> f64 {
        self.grid
            .inside_ids()
            .iter()
            .map(|&i| self.values[i as usize])
            .fold(f64::INFINITY, f64::min)
    }

    /// Gradient by centered differences, one-sided cut-cell stencils with a
    /// boundary ghost value of 0 where an axis neighbor is outside
    /// (Dirichlet fields).
    pub fn gradient(&self) -> VectorField {
        self.gradient_impl(true)
    }

    /// Gradient for fields that do not vanish on the boundary: one-sided
    /// purely interior differences replace the boundary-ghost stencils.
    pub fn gradient_interior(&self) -> VectorField {
        self.gradient_impl(false)
    }

    fn gradient_impl(&self, dirichlet_zero: bool) -> VectorField {
        let g = &self.grid;
        let mut out = vec![Vec2::new(f64::NAN, f64::NAN); g.len()];
        for &id in g.inside_ids() {
            let idx = id as usize;
            out[idx] = gradient_at(g, &self.values, idx, dirichlet_zero);
        }
        VectorField {
            grid: self.grid.clone(),
            values: out,
        }
    }

    /// Bilinear interpolation over the enclosing cell; NaN corners replaced
    /// per `policy`. Errors when the point has no finite corner support.
    pub fn interpolate(&self, p: Vec2, policy: GhostPolicy) -> Result<f64> {
        interpolate_scalar(&self.grid, &self.values, p, policy)
    }
}

/// Gradient stencil at one inside node (shared by fields and the solver).
#[inline]
pub(crate) fn gradient_at(g: &Grid, values: &[f64], idx: usize, dirichlet_zero: bool) -> Vec2 {
    let nx = g.nx;
    let h = g.h;
    let th = g.theta_at(idx);
    let u0 = values[idx];

    let axis = |plus: usize, minus: usize, t_plus: f64, t_minus: f64| -> f64 {
        let p_in = t_plus.is_nan();
        let m_in = t_minus.is_nan();
        if p_in && m_in {
            (values[plus] - values[minus]) / (2.0 * h)
        } else if dirichlet_zero {
            match (p_in, m_in) {
                // ghost 0 at + side crossing
                (false, true) => {
                    let t = t_plus;
                    (-u0 / t + t * (u0 - values[minus])) / (h * (1.0 + t))
                }
                (true, false) => {
                    let t = t_minus;
                    (t * (values[plus] - u0) + u0 / t) / (h * (1.0 + t))
                }
                (false, false) => {
                    let (tp, tm) = (t_plus, t_minus);
                    u0 * (tp * tp - tm * tm) / (tm * tp * (tm + tp) * h)
                }
                (true, true) => unreachable!(),
            }
        } else {
            // interior one-sided fallback
            match (p_in, m_in) {
                (false, true) => (u0 - values[minus]) / h,
                (true, false) => (values[plus] - u0) / h,
                (false, false) => 0.0,
                (true, true) => unreachable!(),
            }
        }
    };

    let gx = axis(
        idx + 1,
        idx - 1,
        th[Axis4::XPlus as usize],
        th[Axis4::XMinus as usize],
    );
    let gy = axis(
        idx + nx,
        idx - nx,
        th[Axis4::YPlus as usize],
        th[Axis4::YMinus as usize],
    );
    Vec2::new(gx, gy)
}

fn interpolate_scalar(g: &Grid, values: &[f64], p: Vec2, policy: GhostPolicy) -> Result<f64> {
    let corners = cell_corners(g, p)?;
    let mut vals = [0.0f64; 4];
    let mut any_finite = false;
    for (k, &(idx, _, _)) in corners.cells.iter().enumerate() {
        let v = values[idx];
        if v.is_finite() {
            vals[k] = v;
            any_finite = true;
        }
    }
    if !any_finite {
        return Err(Error::OutsideDomain(format!(
            "({}, {}) is beyond the inside-region dilation",
            p.x, p.y
        )));
    }
    for (k, &(idx, ci, cj)) in corners.cells.iter().enumerate() {
        if values[idx].is_finite() {
            continue;
        }
        vals[k] = match policy {
            GhostPolicy::DirichletZero => 0.0,
            GhostPolicy::NearestInside => {
                let corner = g.node(ci, cj);
                let mut best = f64::INFINITY;
                let mut bv = 0.0;
                for &(idx2, ci2, cj2) in &corners.cells {
                    if values[idx2].is_finite() {
                        let d = g.node(ci2, cj2).dist(corner);
                        if d < best {
                            best = d;
                            bv = values[idx2];
                        }
                    }
                }
                bv
            }
        };
    }
    let (ax, ay) = (corners.ax, corners.ay);
    Ok(vals[0] * (1.0 - ax) * (1.0 - ay)
        + vals[1] * ax * (1.0 - ay)
        + vals[2] * (1.0 - ax) * ay
        + vals[3] * ax * ay)
}

struct CellCorners {
    /// (index, i, j) of the four corners: (0,0), (1,0), (0,1), (1,1).
    cells: [(usize, usize, usize); 4],
    ax: f64,
    ay: f64,
}

fn cell_corners(g: &Grid, p: Vec2) -> Result<CellCorners> {
    if !p.is_finite() {
        return Err(Error::InvalidInput("non-finite interpolation point".into()));
    }
    let fx = (p.x - g.origin.x) / g.h;
    let fy = (p.y - g.origin.y) / g.h;
    if fx < -1.0 || fy < -1.0 || fx > g.nx as f64 || fy > g.ny as f64 {
        return Err(Error::OutsideDomain(format!(
            "({}, {}) is outside the grid extent",
            p.x, p.y
        )));
    }
    let i = (fx.floor() as i64).clamp(0, g.nx as i64 - 2) as usize;
    let j = (fy.floor() as i64).clamp(0, g.ny as i64 - 2) as usize;
    Ok(CellCorners {
        cells: [
            (g.index(i, j), i, j),
            (g.index(i + 1, j), i + 1, j),
            (g.index(i, j + 1), i, j + 1),
            (g.index(i + 1, j + 1), i + 1, j + 1),
        ],
        ax: fx - i as f64,
        ay: fy - j as f64,
    })
}

#[derive(Clone, Debug)]
pub struct VectorField {
    grid: Arc<Grid>,
    values: Vec<Vec2>,
}

impl VectorField {
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[Vec2] {
        &self.values
    }

    #[inline]
    pub fn at(&self, idx: usize) -> Vec2 {
        self.values[idx]
    }

    /// Max gradient magnitude over inside nodes (Lipschitz estimate).
    pub fn max_norm(&self) -> f64 {
        self.grid
            .inside_ids()
            .iter()
            .map(|&i| self.values[i as usize].norm())
            .fold(0.0f64, f64::max)
    }

    /// Componentwise bilinear interpolation with nearest-inside corner fill.
    pub fn interpolate(&self, p: Vec2) -> Result<Vec2> {
        let xs: Vec<f64> = self.values.iter().map(|v| v.x).collect();
        let ys: Vec<f64> = self.values.iter().map(|v| v.y).collect();
        let x = interpolate_scalar(&self.grid, &xs, p, GhostPolicy::NearestInside)?;
        let y = interpolate_scalar(&self.grid, &ys, p, GhostPolicy::NearestInside)?;
        Ok(Vec2::new(x, y))
    }

    /// Scalar field of vector magnitudes.
    pub fn magnitude(&self) -> ScalarField {
        let mut values = vec![f64::NAN; self.grid.len()];
        for &idx in self.grid.inside_ids() {
            values[idx as usize] = self.values[idx as usize].norm();
        }
        ScalarField {
            grid: self.grid.clone(),
            values,
        }
    }
}

/// A fast interpolator for vector fields used by trajectory integration:
/// components are pre-split and NaNs pre-filled by repeated nearest-neighbor
/// dilation so per-query work is one raw bilinear read per component.
pub struct VectorSampler {
    grid: Arc<Grid>,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl VectorSampler {
    pub fn new(field: &VectorField) -> Self {
        let grid = field.grid.clone();
        let mut xs: Vec<f64> = field.values.iter().map(|v| v.x).collect();
        let mut ys: Vec<f64> = field.values.iter().map(|v| v.y).collect();
        for comp in [&mut xs, &mut ys] {
            dilate_finite(&grid, comp, 3);
            for v in comp.iter_mut() {
                if !v.is_finite() {
                    *v = 0.0;
                }
            }
        }
        Self { grid, xs, ys }
    }

    #[inline]
    pub fn sample(&self, p: Vec2) -> Vec2 {
        Vec2::new(
            self.grid.bilinear_raw(&self.xs, p),
            self.grid.bilinear_raw(&self.ys, p),
        )
    }
}

/// Fills NaN nodes from finite 4-neighbors, `passes` rings deep.
fn dilate_finite(g: &Grid, values: &mut [f64], passes: usize) {
    for _ in 0..passes {
        let snapshot = values.to_vec();
        for j in 0..g.ny {
            for i in 0..g.nx {
                let idx = g.index(i, j);
                if snapshot[idx].is_finite() {
                    continue;
                }
                let mut acc = 0.0;
                let mut n = 0;
                if i + 1 < g.nx && snapshot[idx + 1].is_finite() {
                    acc += snapshot[idx + 1];
                    n += 1;
                }
                if i > 0 && snapshot[idx - 1].is_finite() {
                    acc += snapshot[idx - 1];
                    n += 1;
                }
                if j + 1 < g.ny && snapshot[idx + g.nx].is_finite() {
                    acc += snapshot[idx + g.nx];
                    n += 1;
                }
                if j > 0 && snapshot[idx - g.nx].is_finite() {
                    acc += snapshot[idx - g.nx];
                    n += 1;
                }
                if n > 0 {
                    values[idx] = acc / n as f64;
                }
            }
        }
    }
}
