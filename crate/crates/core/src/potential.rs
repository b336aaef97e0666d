//! Logarithmic potentials and Stieltjes transforms of grid measures.
//!
//! Every cell contributes the exact average of the kernel under its
//! within-cell model: elementary antiderivatives for `UniformInX` cells,
//! and Gauss-Legendre in the grid parameter (with the wide-range parts
//! split off analytically) for `UniformInV` cells. Atoms are exact.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::err::{Error, Result};
use crate::grid::{CellModel, HalfLineGrid, Side};
use crate::measure::GridMeasure;
use crate::quad::{adaptive, adaptive_split, geometric_cuts, gl16};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Which side of a cut a boundary value is taken from. "From above" means
/// the limit `Im z -> 0+`; the side is always stored explicitly, never
/// inferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    FromAbove,
    FromBelow,
}

/// A cell in the v-parametrization `x = (v/(1-v))^p`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct VCell {
    pub p: f64,
    pub vl: f64,
    pub vr: f64,
    pub a: f64,
    pub b: f64,
}

impl VCell {
    pub fn from_grid(g: &HalfLineGrid, i: usize) -> VCell {
        let (a, b) = g.cell_bounds(i);
        VCell {
            p: g.exponent(),
            vl: g.v_node(i),
            vr: g.v_node(i + 1),
            a,
            b,
        }
    }

    pub fn x(&self, v: f64) -> f64 {
        (v / (1.0 - v)).powf(self.p)
    }

    pub fn x_prime(&self, v: f64) -> f64 {
        self.p * self.x(v) / (v * (1.0 - v))
    }

    pub fn v_of_x(&self, x: f64) -> f64 {
        let w = x.powf(1.0 / self.p);
        w / (1.0 + w)
    }

    fn dv(&self) -> f64 {
        self.vr - self.vl
    }
}

const NEAR_FACTOR: f64 = 0.3;
const ADAPTIVE_TOL: f64 = 1e-12;

fn xlnx(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        v * v.ln()
    }
}

/// Exact average of `ln x(v)` over the cell.
fn avg_ln_x(c: &VCell) -> f64 {
    let f = |v: f64| xlnx(v) + xlnx(1.0 - v);
    c.p * (f(c.vr) - f(c.vl)) / c.dv()
}

/// Exact average of `ln|v - vz|` over the cell.
fn avg_ln_dv(c: &VCell, vz: f64) -> f64 {
    let g = |v: f64| {
        let d = v - vz;
        if d == 0.0 {
            -v
        } else {
            d * d.abs().ln() - v
        }
    };
    (g(c.vr) - g(c.vl)) / c.dv()
}

fn dist_to_segment(z: Complex64, a: f64, b: f64) -> f64 {
    if z.re < a {
        (z - a).norm()
    } else if z.re > b {
        (z - b).norm()
    } else {
        z.im.abs()
    }
}

fn is_near(z: Complex64, a: f64, b: f64) -> bool {
    dist_to_segment(z, a, b) < NEAR_FACTOR * z.norm().max(a)
}

/// Average of `ln|z - x|` over a `UniformInX` cell; valid for every `z`
/// including real points inside the cell.
fn avg_ln_abs_inx(a: f64, b: f64, z: Complex64) -> f64 {
    let term = |x: f64| {
        let d = Complex64::new(x, 0.0) - z;
        if d.norm() == 0.0 {
            0.0
        } else {
            (d * d.ln()).re
        }
    };
    (term(b) - term(a)) / (b - a) - 1.0
}

/// Average of `1/(z - x)` over a `UniformInX` cell; `z` off `[a, b]`.
fn avg_inv_inx(a: f64, b: f64, z: Complex64) -> Complex64 {
    ((z - a) / (z - b)).ln() / (b - a)
}

/// Principal value of the average of `1/(xh - x)` for `xh` inside `[a, b]`.
fn avg_inv_pv_inx(a: f64, b: f64, xh: f64) -> f64 {
    ((xh - a) / (b - xh)).ln() / (b - a)
}

/// `d/dz` of the cell average of `1/(z - x)` on a `UniformInX` cell.
fn avg_dinv_inx(a: f64, b: f64, z: Complex64) -> Complex64 {
    -(1.0 / (z - b) - 1.0 / (z - a)) / (b - a)
}

/// Average of `ln|z - x(v)|` over a `UniformInV` cell, all positions of `z`.
fn avg_ln_abs_inv(c: &VCell, z: Complex64) -> f64 {
    let zn = z.norm();
    if zn == 0.0 {
        return avg_ln_x(c);
    }
    if is_near(z, c.a, c.b) {
        if z.im == 0.0 && z.re > c.a && z.re < c.b {
            // Real point inside the cell: peel off the exact averages of
            // ln x and ln|v - vz|; the remainder is bounded.
            let vz = c.v_of_x(z.re);
            let xz = z.re;
            let g = |v: f64| {
                let d = v - vz;
                if d.abs() < 1e-14 * c.dv() {
                    (c.x_prime(vz) / xz).ln()
                } else {
                    ((c.x(v) - xz) / d).abs().ln() - c.x(v).ln()
                }
            };
            let cuts = geometric_cuts(c.vl, c.vr, vz, 20);
            let smooth = adaptive_split(&g, c.vl, c.vr, &cuts, ADAPTIVE_TOL, 22) / c.dv();
            return avg_ln_x(c) + avg_ln_dv(c, vz) + smooth;
        }
        let vh = c.v_of_x(z.re.clamp(c.a.max(1e-300), c.b));
        let f = |v: f64| (z - c.x(v)).norm().max(1e-300).ln();
        let cuts = geometric_cuts(c.vl, c.vr, vh.clamp(c.vl, c.vr), 24);
        return adaptive_split(&f, c.vl, c.vr, &cuts, ADAPTIVE_TOL, 26) / c.dv();
    }
    // Far field: split the kernel logarithm at the scale of |z|.
    let below = |lo: f64, hi: f64| {
        // cells (or cell parts) with x <= |z|
        zn.ln() * (hi - lo) + gl16(&|v: f64| (Complex64::new(1.0, 0.0) - c.x(v) / z).norm().ln(), lo, hi)
    };
    let above = |lo: f64, hi: f64| {
        let part = VCell {
            vl: lo,
            vr: hi,
            ..*c
        };
        avg_ln_x(&part) * (hi - lo)
            + gl16(&|v: f64| (Complex64::new(1.0, 0.0) - z / c.x(v)).norm().ln(), lo, hi)
    };
    let total = if c.b <= zn {
        below(c.vl, c.vr)
    } else if c.a >= zn {
        above(c.vl, c.vr)
    } else {
        let vs = c.v_of_x(zn).clamp(c.vl, c.vr);
        below(c.vl, vs) + above(vs, c.vr)
    };
    total / c.dv()
}

/// Average of `1/(z - x(v))` over a `UniformInV` cell; `z` off the cell.
fn avg_inv_inv(c: &VCell, z: Complex64) -> Complex64 {
    let f = |v: f64| 1.0 / (z - c.x(v));
    if is_near(z, c.a, c.b) {
        let vh = c.v_of_x(z.re.clamp(c.a.max(1e-300), c.b)).clamp(c.vl, c.vr);
        let cuts = geometric_cuts(c.vl, c.vr, vh, 26);
        return adaptive_split(&f, c.vl, c.vr, &cuts, ADAPTIVE_TOL, 28) / c.dv();
    }
    let zn = z.norm();
    if c.a < zn && zn < c.b {
        let vs = c.v_of_x(zn);
        (gl16(&f, c.vl, vs) + gl16(&f, vs, c.vr)) / c.dv()
    } else {
        gl16(&f, c.vl, c.vr) / c.dv()
    }
}

/// Principal value of the average of `1/(xh - x(v))` for `xh` inside the cell.
fn avg_inv_pv_inv(c: &VCell, xh: f64) -> f64 {
    let vz = c.v_of_x(xh);
    let xp = c.x_prime(vz);
    let u = vz * (1.0 - vz);
    let du = 1.0 - 2.0 * vz;
    let curv = (c.p - du) / (2.0 * u * xp); // x''/(2 x'^2) at vz
    let bracket = |v: f64| {
        let d = v - vz;
        if d.abs() < 1e-14 * c.dv() {
            curv
        } else {
            1.0 / (xh - c.x(v)) + 1.0 / (xp * d)
        }
    };
    let cuts = geometric_cuts(c.vl, c.vr, vz, 20);
    let smooth = adaptive_split(&bracket, c.vl, c.vr, &cuts, ADAPTIVE_TOL, 22);
    let pv_log = ((c.vr - vz) / (vz - c.vl)).ln() / xp;
    (smooth - pv_log) / c.dv()
}

/// `d/dz` of the cell average of `1/(z - x(v))` on a `UniformInV` cell.
fn avg_dinv_inv(c: &VCell, z: Complex64) -> Complex64 {
    let f = |v: f64| {
        let d = z - c.x(v);
        -1.0 / (d * d)
    };
    if is_near(z, c.a, c.b) {
        let vh = c.v_of_x(z.re.clamp(c.a.max(1e-300), c.b)).clamp(c.vl, c.vr);
        let cuts = geometric_cuts(c.vl, c.vr, vh, 26);
        return adaptive_split(&f, c.vl, c.vr, &cuts, ADAPTIVE_TOL, 28) / c.dv();
    }
    let zn = z.norm();
    if c.a < zn && zn < c.b {
        let vs = c.v_of_x(zn);
        (gl16(&f, c.vl, vs) + gl16(&f, vs, c.vr)) / c.dv()
    } else {
        gl16(&f, c.vl, c.vr) / c.dv()
    }
}

/// Average of `ln|z - x|` over an arbitrary cell under the given model.
pub(crate) fn avg_ln_abs_model(model: CellModel, c: &VCell, z: Complex64) -> f64 {
    match model {
        CellModel::UniformInX => avg_ln_abs_inx(c.a, c.b, z),
        CellModel::UniformInV => avg_ln_abs_inv(c, z),
    }
}

/// Average of `ln|z - x|` over cell `i` of `g` (magnitude coordinates).
pub(crate) fn cell_avg_ln_abs(g: &HalfLineGrid, i: usize, z: Complex64) -> f64 {
    match g.cell_model(i) {
        CellModel::UniformInX => {
            let (a, b) = g.cell_bounds(i);
            avg_ln_abs_inx(a, b, z)
        }
        CellModel::UniformInV => avg_ln_abs_inv(&VCell::from_grid(g, i), z),
    }
}

pub(crate) fn cell_avg_inv(g: &HalfLineGrid, i: usize, z: Complex64) -> Complex64 {
    match g.cell_model(i) {
        CellModel::UniformInX => {
            let (a, b) = g.cell_bounds(i);
            avg_inv_inx(a, b, z)
        }
        CellModel::UniformInV => avg_inv_inv(&VCell::from_grid(g, i), z),
    }
}

impl GridMeasure {
    fn reflect(&self, z: Complex64) -> Complex64 {
        match self.side() {
            Side::Positive => z,
            Side::Negative => -z,
        }
    }

    /// Logarithmic potential `int log(1/|z-x|) dm(x)`.
    pub fn log_potential(&self, z: Complex64) -> Result<f64> {
        let mut acc = 0.0;
        for a in self.atoms() {
            let d = (z - a.position).norm();
            if d == 0.0 {
                return Err(Error::Singularity(format!(
                    "potential evaluated at the atom {}",
                    a.position
                )));
            }
            acc -= a.mass * d.ln();
        }
        let zm = self.reflect(z);
        let g = self.grid();
        for (i, &m) in self.cell_masses().iter().enumerate() {
            if m != 0.0 {
                acc -= m * cell_avg_ln_abs(g, i, zm);
            }
        }
        Ok(acc)
    }

    /// Potential at a real point given as a coordinate on the measure's
    /// own side (valid on the support).
    pub fn log_potential_real(&self, x: f64) -> Result<f64> {
        self.log_potential(Complex64::new(x, 0.0))
    }

    /// Whether a real coordinate sits strictly inside a cell carrying mass.
    fn on_support(&self, x: f64) -> bool {
        let xm = self.reflect(Complex64::new(x, 0.0)).re;
        if xm <= 0.0 || xm >= self.grid().x_max() {
            return false;
        }
        match self.grid().cell_index_of(xm) {
            Some(i) => self.cell_masses()[i] != 0.0,
            None => false,
        }
    }

    /// Cauchy transform `F(z) = int dm(x)/(z-x)`, `z` off the support.
    /// Requesting a real point inside the support is an ambiguity error;
    /// use [`GridMeasure::stieltjes_boundary`] there.
    pub fn stieltjes(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && self.on_support(z.re) {
            return Err(Error::NeedsSide(format!(
                "z = {} lies inside the support; pass an explicit side",
                z.re
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.atoms() {
            let d = z - a.position;
            if d.norm() == 0.0 {
                return Err(Error::Singularity(format!(
                    "transform evaluated at the atom {}",
                    a.position
                )));
            }
            acc += a.mass / d;
        }
        let zm = self.reflect(z);
        let sign = self.side().sign();
        let g = self.grid();
        for (i, &m) in self.cell_masses().iter().enumerate() {
            if m != 0.0 {
                acc += sign * m * cell_avg_inv(g, i, zm);
            }
        }
        Ok(acc)
    }

    /// Boundary values of the Cauchy transform on the support:
    /// principal value plus `-/+ i pi` times the density (above/below).
    pub fn stieltjes_boundary(&self, x: f64, limit: Limit) -> Result<Complex64> {
        let g = self.grid();
        let xm = self.reflect(Complex64::new(x, 0.0)).re;
        let mut i = g
            .cell_index_of(xm)
            .ok_or_else(|| Error::Domain(format!("{x} is off the grid")))?;
        // Nudge off exact nodes.
        let (mut a, mut b) = g.cell_bounds(i);
        if xm - a < 1e-12 * (b - a) && i > 0 {
            i -= 1;
            let bounds = g.cell_bounds(i);
            a = bounds.0;
            b = bounds.1;
        }
        let mut pv = 0.0;
        for atom in self.atoms() {
            pv += atom.mass / (x - atom.position);
        }
        let sign = self.side().sign();
        for (j, &m) in self.cell_masses().iter().enumerate() {
            if m == 0.0 {
                continue;
            }
            if j == i {
                let p = match g.cell_model(j) {
                    CellModel::UniformInX => avg_inv_pv_inx(a, b, xm),
                    CellModel::UniformInV => avg_inv_pv_inv(&VCell::from_grid(g, j), xm),
                };
                pv += sign * m * p;
            } else {
                pv += sign * m * cell_avg_inv(g, j, Complex64::new(xm, 0.0)).re;
            }
        }
        // Density with respect to the signed coordinate x.
        let rho = match g.cell_model(i) {
            CellModel::UniformInX => self.cell_masses()[i] / (b - a),
            CellModel::UniformInV => {
                let c = VCell::from_grid(g, i);
                self.cell_masses()[i] / (g.dv() * c.x_prime(c.v_of_x(xm)))
            }
        };
        let jump = match limit {
            Limit::FromAbove => -core::f64::consts::PI * rho,
            Limit::FromBelow => core::f64::consts::PI * rho,
        };
        Ok(Complex64::new(pv, jump))
    }

    /// Derivative `F'(z)` of the Cauchy transform, `z` off the support.
    pub fn stieltjes_prime(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && self.on_support(z.re) {
            return Err(Error::NeedsSide(
                "derivative requested on the support".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.atoms() {
            let d = z - a.position;
            acc -= a.mass / (d * d);
        }
        let zm = self.reflect(z);
        let g = self.grid();
        for (i, &m) in self.cell_masses().iter().enumerate() {
            if m != 0.0 {
                // d/dz in the original variable equals side * d/dzm.
                let val = match g.cell_model(i) {
                    CellModel::UniformInX => {
                        let (a, b) = g.cell_bounds(i);
                        avg_dinv_inx(a, b, zm)
                    }
                    CellModel::UniformInV => avg_dinv_inv(&VCell::from_grid(g, i), zm),
                };
                acc += m * val; // sign^2 = 1
            }
        }
        Ok(acc)
    }

    /// Fast midpoint-rule Cauchy transform; adequate for membership sign
    /// tests away from the support but not for identity verification.
    pub fn stieltjes_midpoint(&self, z: Complex64) -> Complex64 {
        let g = self.grid();
        let sign = g.side().sign();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &m) in self.cell_masses().iter().enumerate() {
            if m != 0.0 {
                acc += m / (z - sign * g.cell_mid(i));
            }
        }
        for a in self.atoms() {
            acc += a.mass / (z - a.position);
        }
        acc
    }

    /// Theta-deformed energy `I_theta(m)` for a positive measure on the
    /// positive half-line.
    pub fn theta_energy(&self, theta: f64) -> Result<f64> {
        if self.side() != Side::Positive {
            return Err(Error::Domain(
                "theta energy requires a measure on [0, inf)".into(),
            ));
        }
        if !self.is_positive(0.0) {
            return Err(Error::Domain("theta energy requires a positive measure".into()));
        }
        if !(theta > 0.0) {
            return Err(Error::InvalidParameter("theta must be positive".into()));
        }
        crate::kernel::quadratic_energy(self, theta)
    }
}

/// Adaptive 1D quadrature of a real integrand (re-exported for the
/// droplet checks that integrate sheet functions along segments).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adaptive(&f, a, b, tol, 32)
}

/// Sample `n` points of a function on a segment, uniformly in the interior.
pub fn interior_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * (k as f64 + 0.5) / n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{HalfLineGrid, Side};
    use crate::measure::GridMeasure;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Uniform unit mass on [0,1] discretized on a grid with a node at
    /// x = 1 exactly (v = 0.5 is the 160th node for v_max = 0.8, n = 256),
    /// so the binned measure is the uniform measure.
    fn uniform01(n: usize) -> GridMeasure {
        let g = HalfLineGrid::new(Side::Positive, 2, n, 0.8).unwrap();
        let mut m = GridMeasure::zero(g.clone());
        for i in 0..n {
            let (a, b) = g.cell_bounds(i);
            if b <= 1.0 + 1e-12 {
                m.cell_masses_mut()[i] = b - a;
            }
        }
        m
    }

    #[test]
    fn atom_potential_is_exact() {
        let g = HalfLineGrid::new(Side::Positive, 2, 32, 0.9).unwrap();
        let m = GridMeasure::atom_on(g, 0.0, 1.0).unwrap();
        let u = m.log_potential(c(2.0, 0.0)).unwrap();
        assert!((u - (-(2.0f64).ln())).abs() < 1e-15);
    }

    #[test]
    fn chain_endpoint_atom_matches_hand_value() {
        // mu_0 = (1 - 1/t) delta_{-1/q} with t = q = 1/2 has mass -1 at -2;
        // its potential at the origin is log 2.
        let g = HalfLineGrid::new(Side::Negative, 2, 32, 0.9).unwrap();
        let m = GridMeasure::atom_on(g, -2.0, 1.0 - 2.0).unwrap();
        let u = m.log_potential(c(0.0, 0.0)).unwrap();
        assert!((u - (2.0f64).ln()).abs() < 1e-15, "got {u}");
    }

    #[test]
    fn potential_at_atom_is_singular() {
        let g = HalfLineGrid::new(Side::Positive, 2, 32, 0.9).unwrap();
        let m = GridMeasure::atom_on(g, 1.0, 1.0).unwrap();
        assert!(matches!(
            m.log_potential(c(1.0, 0.0)),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn uniform_potential_matches_analytic_value() {
        // int_0^1 log(1/|10-x|) dx = 1 - 10 ln 10 + 9 ln 9; the brute-force
        // Riemann oracle agrees with this closed form to 1e-9.
        let expect = 1.0 - 10.0 * (10.0f64).ln() + 9.0 * (9.0f64).ln();
        let m = uniform01(256);
        let u = m.log_potential(c(10.0, 0.0)).unwrap();
        assert!((u - expect).abs() < 1e-8, "got {u}, expect {expect}");
    }

    #[test]
    fn uniform_stieltjes_matches_analytic_value() {
        // int_0^1 dx/(2-x) = ln 2.
        let m = uniform01(256);
        let f = m.stieltjes(c(2.0, 0.0)).unwrap();
        assert!((f.re - (2.0f64).ln()).abs() < 1e-8, "got {}", f.re);
        assert!(f.im.abs() < 1e-12);
    }

    #[test]
    fn atom_stieltjes_is_exact() {
        let g = HalfLineGrid::new(Side::Positive, 2, 32, 0.9).unwrap();
        let m = GridMeasure::atom_on(g, 0.7, 1.0).unwrap();
        let z = c(1.3, 0.4);
        let f = m.stieltjes(z).unwrap();
        let exact = 1.0 / (z - 0.7);
        assert!((f - exact).norm() < 1e-15);
    }

    #[test]
    fn stieltjes_far_field_equals_total_mass() {
        let m = uniform01(128);
        let z = c(1e6, 0.0);
        let f = m.stieltjes(z).unwrap();
        assert!(((z * f).re - m.total_mass()).abs() < 1e-5);
    }

    #[test]
    fn stieltjes_inside_support_needs_a_side() {
        let m = uniform01(64);
        assert!(matches!(m.stieltjes(c(0.5, 0.0)), Err(Error::NeedsSide(_))));
    }

    #[test]
    fn sokhotski_jump_recovers_density() {
        let m = uniform01(256);
        let g = m.grid().clone();
        let i = g.cell_index_of(0.4).unwrap();
        let x = g.cell_mid(i);
        let above = m.stieltjes_boundary(x, Limit::FromAbove).unwrap();
        let below = m.stieltjes_boundary(x, Limit::FromBelow).unwrap();
        let dens = (above - below) / Complex64::new(0.0, -2.0 * core::f64::consts::PI);
        let stored = m.density(i);
        assert!(
            (dens.re - stored).abs() <= 0.02 * stored.abs(),
            "jump {} vs stored {}",
            dens.re,
            stored
        );
        assert!(dens.im.abs() < 1e-12);
    }

    #[test]
    fn potential_derivative_matches_stieltjes() {
        // d/dx U(x) = -Re F(x) for real x off the support.
        let m = uniform01(128);
        for &x in &[1.7, 3.0, 9.0] {
            let h = 1e-5;
            let du = (m.log_potential(c(x + h, 0.0)).unwrap()
                - m.log_potential(c(x - h, 0.0)).unwrap())
                / (2.0 * h);
            let f = m.stieltjes(c(x, 0.0)).unwrap();
            assert!((du + f.re).abs() < 1e-5, "x={x}: {du} vs {}", -f.re);
        }
    }

    #[test]
    fn deep_tail_cells_are_integrated_consistently() {
        // Mass far out in the graded tail: the potential at a moderate point
        // must match a direct adaptive integral of the within-cell model.
        let g = HalfLineGrid::new(Side::Positive, 2, 64, 0.999).unwrap();
        let mut m = GridMeasure::zero(g.clone());
        let i = 62; // deep cell
        m.cell_masses_mut()[i] = 0.5;
        let z = c(3.0, 0.0);
        let u = m.log_potential(z).unwrap();
        let cell = VCell::from_grid(&g, i);
        let oracle = -0.5
            * adaptive(
                &|v: f64| ((cell.x(v) - 3.0) as f64).abs().ln(),
                cell.vl,
                cell.vr,
                1e-14,
                40,
            )
            / cell.dv();
        assert!((u - oracle).abs() < 1e-9, "{u} vs {oracle}");
    }

    #[test]
    fn negative_side_reflection_is_consistent() {
        let gp = HalfLineGrid::new(Side::Positive, 2, 64, 0.95).unwrap();
        let gn = gp.mirrored();
        let mut mp = GridMeasure::zero(gp);
        let mut mn = GridMeasure::zero(gn);
        for i in 0..64 {
            mp.cell_masses_mut()[i] = 1.0 / (1.0 + i as f64);
            mn.cell_masses_mut()[i] = 1.0 / (1.0 + i as f64);
        }
        let z = c(0.8, 0.3);
        let up = mp.log_potential(z).unwrap();
        let un = mn.log_potential(-z).unwrap();
        assert!((up - un).abs() < 1e-13);
        let fp = mp.stieltjes(z).unwrap();
        let fn_ = mn.stieltjes(-z).unwrap();
        assert!((fp + fn_).norm() < 1e-13);
    }
}
