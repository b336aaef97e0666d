//! Signed measures on half-line grids: cell masses plus exact atoms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::err::{Error, Result};
use crate::grid::{HalfLineGrid, Side};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// A point mass. Atoms are kept exact and never smeared onto the grid;
/// the negative atom of the chain drives the entire phase structure and
/// smearing it would corrupt the pole of the first sheet function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    /// Signed coordinate of the point mass.
    pub position: f64,
    /// Signed mass.
    pub mass: f64,
}

/// A (possibly signed) measure on a half-line: one mass per grid cell plus
/// a list of atoms on the same side.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMeasure {
    grid: HalfLineGrid,
    cell_masses: Vec<f64>,
    atoms: Vec<Atom>,
}

/// Jordan decomposition of a signed grid measure, together with the
/// closed intervals on which the positive part is supported.
#[derive(Clone, Debug)]
pub struct JordanPair {
    pub positive_part: GridMeasure,
    pub negative_part: GridMeasure,
    /// Closed intervals (magnitudes) covering the cells of positive mass.
    pub support_intervals: Vec<(f64, f64)>,
}

impl GridMeasure {
    pub fn new(grid: HalfLineGrid, cell_masses: Vec<f64>, atoms: Vec<Atom>) -> Result<Self> {
        if cell_masses.len() != grid.n_cells() {
            return Err(Error::InvalidParameter(format!(
                "expected {} cell masses, got {}",
                grid.n_cells(),
                cell_masses.len()
            )));
        }
        for a in &atoms {
            if !grid.side().contains(a.position) {
                return Err(Error::Domain(format!(
                    "atom at {} is off the declared half-line",
                    a.position
                )));
            }
        }
        Ok(GridMeasure {
            grid,
            cell_masses,
            atoms,
        })
    }

    pub fn zero(grid: HalfLineGrid) -> Self {
        let n = grid.n_cells();
        GridMeasure {
            grid,
            cell_masses: vec![0.0; n],
            atoms: Vec::new(),
        }
    }

    /// A single atom on its own grid (the grid is still needed to fix the
    /// side and for serialization).
    pub fn atom_on(grid: HalfLineGrid, position: f64, mass: f64) -> Result<Self> {
        let mut m = GridMeasure::zero(grid);
        if !m.grid.side().contains(position) {
            return Err(Error::Domain(format!(
                "atom at {position} is off the declared half-line"
            )));
        }
        m.atoms.push(Atom { position, mass });
        Ok(m)
    }

    pub fn grid(&self) -> &HalfLineGrid {
        &self.grid
    }

    pub fn side(&self) -> Side {
        self.grid.side()
    }

    pub fn cell_masses(&self) -> &[f64] {
        &self.cell_masses
    }

    pub fn cell_masses_mut(&mut self) -> &mut [f64] {
        &mut self.cell_masses
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        let cells: f64 = self.cell_masses.iter().sum();
        let atoms: f64 = self.atoms.iter().map(|a| a.mass).sum();
        cells + atoms
    }

    /// Total variation of the cell part: sum of |m_i|.
    pub fn cell_abs_mass(&self) -> f64 {
        self.cell_masses.iter().map(|m| m.abs()).sum()
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.cell_masses.iter().all(|&m| m >= -tol) && self.atoms.iter().all(|a| a.mass >= -tol)
    }

    /// Average density of cell `i` with respect to `x` (mass / x-width).
    pub fn density(&self, i: usize) -> f64 {
        self.cell_masses[i] / self.grid.cell_width(i)
    }

    /// Density at the cell's v-midpoint under the within-cell-uniform-in-v
    /// model: `(m/dv) * dv/dx`.
    pub fn density_at_mid(&self, i: usize) -> f64 {
        let v = self.grid.v_max() * (i as f64 + 0.5) / (self.grid.n_cells() as f64);
        self.cell_masses[i] / (self.grid.dv() * self.grid.dx_dv(v))
    }

    pub fn scaled(&self, c: f64) -> GridMeasure {
        let mut out = self.clone();
        for m in &mut out.cell_masses {
            *m *= c;
        }
        for a in &mut out.atoms {
            a.mass *= c;
        }
        out
    }

    /// `self + c * other`; grids must be identical.
    pub fn axpy(&self, c: f64, other: &GridMeasure) -> Result<GridMeasure> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::Domain("grid mismatch in measure arithmetic".into()));
        }
        let mut out = self.clone();
        for (m, o) in out.cell_masses.iter_mut().zip(&other.cell_masses) {
            *m += c * o;
        }
        for a in &other.atoms {
            out.push_atom(Atom {
                position: a.position,
                mass: c * a.mass,
            });
        }
        Ok(out)
    }

    fn push_atom(&mut self, atom: Atom) {
        // Merge atoms at identical positions so repeated sums stay small.
        for a in &mut self.atoms {
            if a.position == atom.position {
                a.mass += atom.mass;
                return;
            }
        }
        self.atoms.push(atom);
    }

    /// Jordan decomposition of the cell part. Cells with |mass| below
    /// `tol` times the largest magnitude count as zero and are assigned
    /// to neither part. Atoms are split by sign.
    pub fn jordan(&self, tol: f64) -> JordanPair {
        let peak = self
            .cell_masses
            .iter()
            .fold(0.0f64, |acc, m| acc.max(m.abs()));
        let cut = tol * peak;
        let mut pos = GridMeasure::zero(self.grid.clone());
        let mut neg = GridMeasure::zero(self.grid.clone());
        for (i, &m) in self.cell_masses.iter().enumerate() {
            if m > cut {
                pos.cell_masses[i] = m;
            } else if m < -cut {
                neg.cell_masses[i] = -m;
            }
        }
        for a in &self.atoms {
            if a.mass > 0.0 {
                pos.push_atom(*a);
            } else if a.mass < 0.0 {
                neg.push_atom(Atom {
                    position: a.position,
                    mass: -a.mass,
                });
            }
        }
        let support_intervals = pos.support_runs_as_intervals(cut);
        JordanPair {
            positive_part: pos,
            negative_part: neg,
            support_intervals,
        }
    }

    /// Closed intervals (in magnitudes) covering maximal runs of cells with
    /// mass above `cut`.
    pub fn support_runs_as_intervals(&self, cut: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut run: Option<(usize, usize)> = None;
        for (i, &m) in self.cell_masses.iter().enumerate() {
            if m > cut {
                run = Some(match run {
                    None => (i, i),
                    Some((s, _)) => (s, i),
                });
            } else if let Some((s, e)) = run.take() {
                out.push((self.grid.cell_bounds(s).0, self.grid.cell_bounds(e).1));
            }
        }
        if let Some((s, e)) = run {
            out.push((self.grid.cell_bounds(s).0, self.grid.cell_bounds(e).1));
        }
        out
    }

    /// Cumulative mass of the cell part on `[0, x]` (magnitudes), with the
    /// within-cell-uniform-in-v interpolation. Atoms are not included.
    pub fn cdf_cells(&self, x: f64) -> f64 {
        let g = &self.grid;
        if x <= 0.0 {
            return 0.0;
        }
        let v = g.v_of_x(x.min(g.x_max()));
        let frac = (v / g.v_max()) * g.n_cells() as f64;
        let full = (frac.floor() as usize).min(g.n_cells());
        let mut acc = 0.0;
        for i in 0..full {
            acc += self.cell_masses[i];
        }
        if full < g.n_cells() {
            acc += self.cell_masses[full] * (frac - full as f64);
        }
        acc
    }

    /// Pushforward under the inversion `x -> 1/x`, re-binned onto `target`
    /// (which must live on the same side). Atoms map exactly.
    pub fn pushforward_inversion(&self, target: &HalfLineGrid) -> Result<GridMeasure> {
        if target.side() != self.grid.side() {
            return Err(Error::Domain("inversion must stay on the same side".into()));
        }
        let mut out = GridMeasure::zero(target.clone());
        let total_cells: f64 = self.cell_masses.iter().sum();
        // Mass of the image on [0, y] equals the mass of the original on
        // [1/y, inf).
        let image_cdf = |y: f64| -> f64 {
            if y <= 0.0 {
                0.0
            } else {
                total_cells - self.cdf_cells(1.0 / y)
            }
        };
        for i in 0..target.n_cells() {
            let (a, b) = target.cell_bounds(i);
            out.cell_masses[i] = image_cdf(b) - image_cdf(a);
        }
        for a in &self.atoms {
            if a.position == 0.0 {
                return Err(Error::Singularity("cannot invert an atom at zero".into()));
            }
            out.push_atom(Atom {
                position: 1.0 / a.position,
                mass: a.mass,
            });
        }
        Ok(out)
    }

    /// L1 distance between the cell parts of two measures on the same grid.
    pub fn l1_distance(&self, other: &GridMeasure) -> Result<f64> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::Domain("grid mismatch in L1 distance".into()));
        }
        Ok(self
            .cell_masses
            .iter()
            .zip(&other.cell_masses)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{HalfLineGrid, Side};

    fn grid() -> HalfLineGrid {
        HalfLineGrid::new(Side::Positive, 2, 64, 0.95).unwrap()
    }

    #[test]
    fn mass_additivity_is_exact() {
        let g = grid();
        let mut a = GridMeasure::zero(g.clone());
        let mut b = GridMeasure::zero(g.clone());
        for i in 0..64 {
            a.cell_masses_mut()[i] = (i as f64).sin();
            b.cell_masses_mut()[i] = (i as f64).cos();
        }
        let sum = a.axpy(1.0, &b).unwrap();
        let expect = a.total_mass() + b.total_mass();
        assert!((sum.total_mass() - expect).abs() <= 1e-14 * expect.abs().max(1.0));
    }

    #[test]
    fn jordan_split_partitions_signs() {
        let g = grid();
        let mut m = GridMeasure::zero(g);
        for i in 0..64 {
            m.cell_masses_mut()[i] = if (20..40).contains(&i) { -1.0 } else { 0.5 };
        }
        let jp = m.jordan(1e-12);
        assert!(jp.positive_part.is_positive(0.0));
        assert!(jp.negative_part.is_positive(0.0));
        assert_eq!(jp.support_intervals.len(), 2);
        let back = jp.positive_part.axpy(-1.0, &jp.negative_part).unwrap();
        assert!(back.l1_distance(&m).unwrap() < 1e-14);
    }

    #[test]
    fn inversion_pushforward_preserves_mass() {
        let g = grid();
        let mut m = GridMeasure::zero(g.clone());
        // Mass concentrated in a moderate window so the image stays on-grid.
        for i in 10..50 {
            m.cell_masses_mut()[i] = 0.25;
        }
        let inv = m.pushforward_inversion(&g).unwrap();
        assert!((inv.total_mass() - m.total_mass()).abs() < 1e-10);
        // Double inversion returns the original up to one-cell re-binning
        // diffusion: compare cumulative masses at the nodes.
        let back = inv.pushforward_inversion(&g).unwrap();
        let peak = m.cell_masses().iter().cloned().fold(0.0f64, f64::max);
        for i in (0..=64).step_by(4) {
            let x = if i == 64 { g.x_max() } else { g.node(i) };
            let d = (back.cdf_cells(x) - m.cdf_cells(x)).abs();
            assert!(d <= 2.0 * peak + 1e-12, "cdf drift {d} at node {i}");
        }
    }

    #[test]
    fn atoms_must_sit_on_the_declared_side() {
        let g = grid();
        assert!(GridMeasure::atom_on(g.clone(), -1.0, 1.0).is_err());
        assert!(GridMeasure::atom_on(g, 1.0, 1.0).is_ok());
    }
}
