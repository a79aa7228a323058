//! Radially symmetric Fourier analysis on `R^n`: composite Gauss-Legendre
//! grids, modified Bessel kernels, forward/inverse radial transforms,
//! frequency cutoffs and `L^q` norms.
//!
//! The transform uses the unitary normalization, under which the radial
//! transform is its own inverse and the Plancherel identity holds with the
//! same surface constant on both sides.

mod bessel;
mod cutoff;
mod norms;
mod transform;

pub use bessel::modified_bessel;
pub use cutoff::{cutoff_apply, CutoffIndex, CutoffSpec, Mollifier};
pub use norms::{homogeneous_derivative, lq_norm, surface_area};
pub use transform::{radial_fourier, radial_fourier_diag, Direction, TransformDiagnostics};

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MgtError, Result};

/// Minimum node density the transform demands: points per period of the
/// fastest oscillation it has to resolve.
pub const POINTS_PER_PERIOD: f64 = 10.0;

/// Quadrature grid on `[0, extent]` tagged with the ambient dimension.
///
/// Weights are plain interval weights: `sum_i w_i g(r_i)` approximates
/// `int_0^extent g(r) dr`, and the `r^{n-1}` surface factor is applied by
/// the consumers (transforms, norms) explicitly.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    dimension: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    extent: f64,
}

impl RadialGrid {
    /// Composite Gauss-Legendre rule: `panels` equal panels of the given order.
    pub fn gauss_legendre(
        dimension: usize,
        extent: f64,
        panels: usize,
        order: usize,
    ) -> Result<Arc<Self>> {
        if dimension == 0 {
            return Err(MgtError::Domain("dimension must be at least 1".into()));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(MgtError::Domain(format!("bad extent {extent}")));
        }
        if panels == 0 || order < 2 || order > 64 {
            return Err(MgtError::Domain(
                "need at least one panel and order in 2..=64".into(),
            ));
        }
        let (xs, ws) = legendre_rule(order);
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        let width = extent / panels as f64;
        for p in 0..panels {
            let a = p as f64 * width;
            let mid = a + 0.5 * width;
            let half = 0.5 * width;
            for i in 0..order {
                nodes.push(mid + half * xs[i]);
                weights.push(half * ws[i]);
            }
        }
        Ok(Arc::new(Self {
            dimension,
            nodes,
            weights,
            extent,
        }))
    }

    /// Grid sized by the oscillation rule: at least [`POINTS_PER_PERIOD`]
    /// nodes per period of `sin(max_target_freq * r)`.
    pub fn for_oscillation(
        dimension: usize,
        extent: f64,
        max_target_freq: f64,
    ) -> Result<Arc<Self>> {
        const ORDER: usize = 12;
        let panels = if max_target_freq <= 0.0 {
            4
        } else {
            let width = ORDER as f64 * 2.0 * PI / (POINTS_PER_PERIOD * max_target_freq);
            ((extent / width).ceil() as usize).max(4)
        };
        Self::gauss_legendre(dimension, extent, panels, ORDER)
    }

    /// Grid from explicit nodes/weights (must be strictly increasing, positive
    /// weights).
    pub fn from_parts(
        dimension: usize,
        nodes: Vec<f64>,
        weights: Vec<f64>,
        extent: f64,
    ) -> Result<Arc<Self>> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(MgtError::Domain("nodes/weights length mismatch".into()));
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(MgtError::Domain("nodes must be strictly increasing".into()));
        }
        if nodes[0] < 0.0 || *nodes.last().unwrap() > extent {
            return Err(MgtError::Domain("nodes must lie in [0, extent]".into()));
        }
        if weights.iter().any(|&w| w <= 0.0 || !w.is_finite()) {
            return Err(MgtError::Domain("weights must be positive".into()));
        }
        Ok(Arc::new(Self {
            dimension,
            nodes,
            weights,
            extent,
        }))
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn extent(&self) -> f64 {
        self.extent
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Average node density (nodes per unit radius).
    pub fn mean_density(&self) -> f64 {
        self.nodes.len() as f64 / self.extent
    }

    /// Quadrature of `g` against plain `dr` (no surface factor).
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * g(r))
            .sum()
    }
}

/// Samples of a radially symmetric function on a [`RadialGrid`].
#[derive(Debug, Clone)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn from_fn(grid: &Arc<RadialGrid>, mut f: impl FnMut(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self {
            grid: Arc::clone(grid),
            values,
        }
    }

    pub fn from_values(grid: &Arc<RadialGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(MgtError::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(MgtError::Domain("non-finite sample values".into()));
        }
        Ok(Self {
            grid: Arc::clone(grid),
            values,
        })
    }

    pub fn zero(grid: &Arc<RadialGrid>) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![0.0; grid.len()],
        }
    }

    #[inline]
    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid)
            || (self.grid.dimension == other.grid.dimension
                && self.grid.extent == other.grid.extent
                && self.grid.nodes == other.grid.nodes)
    }

    /// Pointwise map onto the same grid.
    pub fn map(&self, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&r, &v)| f(r, v))
            .collect();
        Self {
            grid: Arc::clone(&self.grid),
            values,
        }
    }

    /// Pointwise linear combination `a*self + b*other`.
    pub fn axpy(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(MgtError::GridMismatch(
                "linear combination across different grids".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect();
        Ok(Self {
            grid: Arc::clone(&self.grid),
            values,
        })
    }

    /// Write the samples as a two-column CSV `node,value` plus a JSON
    /// sidecar holding `dimension` and `extent` next to it.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let mut body = String::from("node,value\n");
        for (&r, &v) in self.grid.nodes().iter().zip(&self.values) {
            body.push_str(&format!("{r},{v}\n"));
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(body.as_bytes())?;
        let sidecar = SidecarHeader {
            dimension: self.grid.dimension,
            extent: self.grid.extent,
        };
        let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
        std::fs::write(sidecar_path(path), json)?;
        Ok(())
    }

    /// Read samples written by [`write_csv`]. The reconstructed grid carries
    /// trapezoid weights; it is an interchange format, not a quadrature rule.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let header: SidecarHeader =
            serde_json::from_str(&std::fs::read_to_string(sidecar_path(path))?)
                .map_err(|e| MgtError::Domain(format!("bad sidecar: {e}")))?;
        let text = std::fs::read_to_string(path)?;
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 {
                continue;
            }
            let mut cols = line.split(',');
            let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
                return Err(MgtError::Domain(format!("bad CSV line {}", i + 1)));
            };
            nodes.push(
                a.trim()
                    .parse::<f64>()
                    .map_err(|e| MgtError::Domain(format!("line {}: {e}", i + 1)))?,
            );
            values.push(
                b.trim()
                    .parse::<f64>()
                    .map_err(|e| MgtError::Domain(format!("line {}: {e}", i + 1)))?,
            );
        }
        let weights = trapezoid_weights(&nodes);
        let grid = RadialGrid::from_parts(header.dimension, nodes, weights, header.extent)?;
        Self::from_values(&grid, values)
    }
}

#[derive(Serialize, Deserialize)]
struct SidecarHeader {
    dimension: usize,
    extent: f64,
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    path.with_extension("json")
}

fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    if n == 1 {
        w[0] = 1.0;
        return w;
    }
    for i in 0..n {
        let left = if i == 0 { nodes[0] } else { nodes[i - 1] };
        let right = if i == n - 1 { nodes[n - 1] } else { nodes[i + 1] };
        w[i] = 0.5 * (right - left);
    }
    w[0] += 0.5 * (nodes[0] - 0.0).max(0.0);
    w
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
fn legendre_rule(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_eval(k, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_eval(k, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_eval(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_weights_reproduce_monomials() {
        // Including the surface monomial r^{n-1} itself.
        let grid = RadialGrid::gauss_legendre(3, 2.5, 7, 10).unwrap();
        for k in 0..=8u32 {
            let exact = 2.5_f64.powi(k as i32 + 1) / (k as f64 + 1.0);
            let got = grid.integrate(|r| r.powi(k as i32));
            assert!(
                (got - exact).abs() <= 1e-10 * exact.abs().max(1.0),
                "k={k}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn oscillation_rule_meets_density() {
        let grid = RadialGrid::for_oscillation(3, 100.0, 4.0).unwrap();
        let period = 2.0 * PI / 4.0;
        assert!(grid.mean_density() * period >= POINTS_PER_PERIOD - 1e-9);
    }

    #[test]
    fn from_parts_validates() {
        assert!(RadialGrid::from_parts(3, vec![1.0, 0.5], vec![1.0, 1.0], 2.0).is_err());
        assert!(RadialGrid::from_parts(3, vec![0.5, 1.0], vec![1.0, -1.0], 2.0).is_err());
        assert!(RadialGrid::from_parts(0, vec![0.5], vec![1.0], 2.0).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let grid = RadialGrid::gauss_legendre(3, 2.0, 3, 4).unwrap();
        let f = RadialFunction::from_fn(&grid, |r| (-r).exp());
        let dir = std::env::temp_dir().join(format!("mgt-radial-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.csv");
        f.write_csv(&path).unwrap();
        let g = RadialFunction::read_csv(&path).unwrap();
        assert_eq!(g.grid().dimension(), 3);
        assert_eq!(g.grid().extent(), 2.0);
        assert_eq!(g.values(), f.values());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn grid_mismatch_detected() {
        let g1 = RadialGrid::gauss_legendre(3, 2.0, 3, 4).unwrap();
        let g2 = RadialGrid::gauss_legendre(3, 3.0, 3, 4).unwrap();
        let f1 = RadialFunction::from_fn(&g1, |_| 1.0);
        let f2 = RadialFunction::from_fn(&g2, |_| 1.0);
        assert!(f1.axpy(1.0, &f2, 1.0).is_err());
    }
}
