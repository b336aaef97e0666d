//! Compactified graded grids on half-lines.
//!
//! A grid on `[0, inf)` (or its mirror image) is generated by the map
//! `x = w^(r+1)` with `w = v/(1-v)` and `v` uniform on `[0, v_max]`.
//! The substitution flattens the `x^(-r/(r+1))` density singularity at the
//! origin and packs the unbounded tail into finitely many cells whose
//! widths grow without bound as `v_max` approaches one.

use alloc::vec::Vec;

use crate::err::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Which half-line the grid lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `[0, inf)`
    Positive,
    /// `(-inf, 0]`
    Negative,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }

    /// The half-line `Delta_j` carrying the j-th measure of the chain:
    /// `[0, inf)` for odd `j`, `(-inf, 0]` for even `j`.
    pub fn for_index(j: usize) -> Side {
        if j % 2 == 1 {
            Side::Positive
        } else {
            Side::Negative
        }
    }

    pub fn contains(self, x: f64) -> bool {
        match self {
            Side::Positive => x >= 0.0,
            Side::Negative => x <= 0.0,
        }
    }
}

/// Within-cell distribution model used by the quadrature engine.
///
/// Cells of moderate logarithmic width carry a density that is constant in
/// `x`; for those all potential integrals have elementary closed forms.
/// Cells spanning a wide range of scales (the first cells at the origin and
/// the deep tail cells) instead distribute their mass uniformly in the grid
/// parameter `v`, which reproduces both endpoint density exponents of the
/// equilibrium measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellModel {
    UniformInX,
    UniformInV,
}

/// Threshold on `ln(x_right/x_left)` above which a cell switches to the
/// `UniformInV` model.
pub(crate) const MODEL_LOG_SPAN: f64 = 0.25;

/// A graded grid on one half-line.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfLineGrid {
    side: Side,
    r: u32,
    n_cells: usize,
    v_max: f64,
    /// Node magnitudes `|x_i|`, strictly increasing, `nodes[0] == 0`.
    nodes: Vec<f64>,
    models: Vec<CellModel>,
}

impl HalfLineGrid {
    /// Build the grid `x = side * w^(r+1)`, `w = v/(1-v)`, `v` uniform on
    /// `[0, v_max]` with `n_cells` cells.
    pub fn new(side: Side, r: u32, n_cells: usize, v_max: f64) -> Result<Self> {
        if n_cells < 16 {
            return Err(Error::InvalidParameter(alloc::format!(
                "n_cells must be at least 16, got {n_cells}"
            )));
        }
        if !(v_max > 0.0 && v_max < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "v_max must lie in (0,1), got {v_max}"
            )));
        }
        if r < 1 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        let p = (r + 1) as i32;
        let mut nodes = Vec::with_capacity(n_cells + 1);
        for i in 0..=n_cells {
            let v = v_max * (i as f64) / (n_cells as f64);
            let w = v / (1.0 - v);
            nodes.push(w.powi(p));
        }
        let mut models = Vec::with_capacity(n_cells);
        for i in 0..n_cells {
            let (a, b) = (nodes[i], nodes[i + 1]);
            let v_mid = v_max * (i as f64 + 0.5) / n_cells as f64;
            // Only the deep tail cells switch model: there the x-uniform
            // distribution misplaces the mass by orders of magnitude, while
            // near the origin the cells are too small for it to matter.
            let m = if v_mid > 0.5 && (a <= 0.0 || (b / a).ln() > MODEL_LOG_SPAN) {
                CellModel::UniformInV
            } else {
                CellModel::UniformInX
            };
            models.push(m);
        }
        Ok(HalfLineGrid {
            side,
            r,
            n_cells,
            v_max,
            nodes,
            models,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn symmetry_order(&self) -> u32 {
        self.r
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    /// Grading exponent `r + 1` of the node map.
    pub fn exponent(&self) -> f64 {
        (self.r + 1) as f64
    }

    /// Node magnitudes `|x_0| < |x_1| < ...` (first entry is zero).
    pub fn node_magnitudes(&self) -> &[f64] {
        &self.nodes
    }

    /// Signed node coordinates, ordered by increasing magnitude.
    pub fn node(&self, i: usize) -> f64 {
        self.side.sign() * self.nodes[i]
    }

    /// Uniform spacing of the grid parameter `v`.
    pub fn dv(&self) -> f64 {
        self.v_max / self.n_cells as f64
    }

    pub fn v_node(&self, i: usize) -> f64 {
        self.v_max * (i as f64) / (self.n_cells as f64)
    }

    /// Magnitude of the image of a grid parameter.
    pub fn x_of_v(&self, v: f64) -> f64 {
        let w = v / (1.0 - v);
        w.powi((self.r + 1) as i32)
    }

    /// `dx/dv` of the node map, in magnitude.
    pub fn dx_dv(&self, v: f64) -> f64 {
        let p = self.exponent();
        let w = v / (1.0 - v);
        p * w.powf(p - 1.0) / ((1.0 - v) * (1.0 - v))
    }

    /// Inverse of the node map for a magnitude `x >= 0`.
    pub fn v_of_x(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let w = x.powf(1.0 / self.exponent());
        w / (1.0 + w)
    }

    /// Cell bounds as magnitudes `(x_left, x_right)` with `x_left < x_right`.
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        (self.nodes[i], self.nodes[i + 1])
    }

    pub fn cell_width(&self, i: usize) -> f64 {
        self.nodes[i + 1] - self.nodes[i]
    }

    /// Image of the cell's v-midpoint; the natural representative point.
    pub fn cell_mid(&self, i: usize) -> f64 {
        let v = self.v_max * (i as f64 + 0.5) / (self.n_cells as f64);
        self.x_of_v(v)
    }

    pub fn cell_model(&self, i: usize) -> CellModel {
        self.models[i]
    }

    /// Index of the cell containing magnitude `x`, if within the grid.
    pub fn cell_index_of(&self, x: f64) -> Option<usize> {
        if x < 0.0 || x > *self.nodes.last().unwrap() {
            return None;
        }
        let v = self.v_of_x(x);
        let i = ((v / self.v_max) * self.n_cells as f64) as usize;
        Some(i.min(self.n_cells - 1))
    }

    /// Largest node magnitude (the truncation point of the half-line).
    pub fn x_max(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Same grid on the opposite half-line.
    pub fn mirrored(&self) -> HalfLineGrid {
        let mut g = self.clone();
        g.side = self.side.opposite();
        g
    }

    /// Grids are compatible when they share side, order and node set.
    pub fn compatible(&self, other: &HalfLineGrid) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_cell_grid_matches_declared_map() {
        let g = HalfLineGrid::new(Side::Positive, 2, 16, 0.9).unwrap();
        assert_eq!(g.n_cells(), 16);
        assert_eq!(g.node(0), 0.0);
        let last = g.node(16);
        assert!((last - 729.0).abs() < 1e-9 * 729.0, "last node {last}");
    }

    #[test]
    fn mirror_negates_nodes() {
        let g = HalfLineGrid::new(Side::Positive, 2, 16, 0.9).unwrap();
        let m = HalfLineGrid::new(Side::Negative, 2, 16, 0.9).unwrap();
        for i in 0..=16 {
            assert_eq!(g.node(i), -m.node(i));
        }
        assert_eq!(g.mirrored(), m);
    }

    #[test]
    fn spacing_near_origin_follows_w_differential() {
        // dx ~ 2 w dw for r = 1; check on the generated nodes near zero.
        let g = HalfLineGrid::new(Side::Positive, 1, 256, 0.99).unwrap();
        for i in 1..8 {
            let (a, b) = g.cell_bounds(i);
            let dx = b - a;
            let vm = g.v_max() * (i as f64 + 0.5) / 256.0;
            let w = vm / (1.0 - vm);
            let dw = g.dv() / ((1.0 - vm) * (1.0 - vm));
            let pred = 2.0 * w * dw;
            assert!(
                (dx / pred - 1.0).abs() < 0.05,
                "cell {i}: dx {dx:.3e} vs predicted {pred:.3e}"
            );
        }
        // Spacing vanishes towards the origin.
        assert!(g.cell_width(0) < g.cell_width(4));
    }

    #[test]
    fn regeneration_is_bit_identical() {
        let a = HalfLineGrid::new(Side::Positive, 3, 128, 0.997).unwrap();
        let b = HalfLineGrid::new(Side::Positive, 3, 128, 0.997).unwrap();
        assert_eq!(a.node_magnitudes(), b.node_magnitudes());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(HalfLineGrid::new(Side::Positive, 2, 8, 0.9).is_err());
        assert!(HalfLineGrid::new(Side::Positive, 2, 32, 1.0).is_err());
        assert!(HalfLineGrid::new(Side::Positive, 2, 32, 0.0).is_err());
        assert!(HalfLineGrid::new(Side::Positive, 0, 32, 0.9).is_err());
    }

    #[test]
    fn cell_lookup_is_consistent() {
        let g = HalfLineGrid::new(Side::Positive, 2, 64, 0.95).unwrap();
        for i in 0..64 {
            let x = g.cell_mid(i);
            assert_eq!(g.cell_index_of(x), Some(i));
        }
        assert_eq!(g.cell_index_of(g.x_max() * 1.01), None);
    }
}
