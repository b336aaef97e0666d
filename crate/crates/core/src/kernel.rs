//! Discrete energy kernels: cell-pair averages of the logarithmic kernel
//! and its theta-deformed variant.
//!
//! The theta kernel is reduced to the plain one through
//! `|x^t - y^t| = |x - y| * max(x,y)^(t-1) * phi(min/max)` with
//! `phi(rho) = (1 - rho^t)/(1 - rho)` analytic across the diagonal, so the
//! only numerical part is a smooth bounded factor.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::err::{Error, Result};
use crate::grid::{CellModel, HalfLineGrid};
use crate::measure::GridMeasure;
use crate::potential::{cell_avg_ln_abs, VCell};
use crate::quad::{adaptive, adaptive_split, geometric_cuts, gl16};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Antiderivative-of-antiderivative of `ln|s|`: `H'' = ln|s|`.
fn h2(s: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        s * s * (2.0 * s.abs().ln() - 3.0) / 4.0
    }
}

/// Point of cell `i` at parameter `tau` in `[0, 1]` under the cell's model.
fn cell_point(g: &HalfLineGrid, i: usize, tau: f64) -> f64 {
    match g.cell_model(i) {
        CellModel::UniformInX => {
            let (a, b) = g.cell_bounds(i);
            a + tau * (b - a)
        }
        CellModel::UniformInV => {
            let c = VCell::from_grid(g, i);
            c.x(c.vl + tau * (c.vr - c.vl))
        }
    }
}

/// Average of `ln x` over a cell under its model.
fn avg_ln_x_cell(g: &HalfLineGrid, i: usize) -> f64 {
    match g.cell_model(i) {
        CellModel::UniformInX => {
            let (a, b) = g.cell_bounds(i);
            let f = |y: f64| if y == 0.0 { 0.0 } else { y * y.ln() - y };
            (f(b) - f(a)) / (b - a)
        }
        CellModel::UniformInV => {
            let c = VCell::from_grid(g, i);
            let f = |v: f64| {
                let xlnx = |s: f64| if s <= 0.0 { 0.0 } else { s * s.ln() };
                xlnx(v) + xlnx(1.0 - v)
            };
            c.p * (f(c.vr) - f(c.vl)) / (c.vr - c.vl)
        }
    }
}

/// Average of `ln max(x, y)` over the square of one cell.
fn avg_ln_max_diag(g: &HalfLineGrid, i: usize) -> f64 {
    match g.cell_model(i) {
        CellModel::UniformInX => {
            let (a, b) = g.cell_bounds(i);
            // 2/(b-a)^2 * int_a^b (y-a) ln y dy
            let i1 = |y: f64| {
                if y == 0.0 {
                    0.0
                } else {
                    y * y / 2.0 * y.ln() - y * y / 4.0
                }
            };
            let i0 = |y: f64| if y == 0.0 { 0.0 } else { y * y.ln() - y };
            2.0 / ((b - a) * (b - a)) * (i1(b) - i1(a) - a * (i0(b) - i0(a)))
        }
        CellModel::UniformInV => {
            let c = VCell::from_grid(g, i);
            // 2p/dv^2 * int (v - vl) (ln v - ln(1-v)) dv
            let ivlnv = |v: f64| {
                if v <= 0.0 {
                    0.0
                } else {
                    v * v / 2.0 * v.ln() - v * v / 4.0
                }
            };
            let ivln1mv = |v: f64| {
                let om = 1.0 - v;
                let l = if om <= 0.0 { 0.0 } else { om.ln() };
                v * v / 2.0 * l - v * v / 4.0 - v / 2.0 - 0.5 * l
            };
            let ilnv = |v: f64| if v <= 0.0 { 0.0 } else { v * v.ln() - v };
            let iln1mv = |v: f64| {
                let om = 1.0 - v;
                if om <= 0.0 {
                    -v
                } else {
                    -om * om.ln() - v
                }
            };
            let dv = c.vr - c.vl;
            let j = (ivlnv(c.vr) - ivlnv(c.vl)) - (ivln1mv(c.vr) - ivln1mv(c.vl))
                - c.vl * ((ilnv(c.vr) - ilnv(c.vl)) - (iln1mv(c.vr) - iln1mv(c.vl)));
            2.0 * c.p / (dv * dv) * j
        }
    }
}

/// `ln phi` with `phi = (1 - rho^theta)/(1 - rho)`, `rho = e^L`, `L <= 0`,
/// evaluated stably through the ratio of expm1 series near `L = 0`.
fn ln_phi(theta: f64, l: f64) -> f64 {
    if l > -1e-6 {
        let num = 1.0 + theta * l / 2.0 + theta * theta * l * l / 6.0;
        let den = 1.0 + l / 2.0 + l * l / 6.0;
        theta.ln() + (num / den).ln()
    } else {
        let rho = l.exp();
        ((1.0 - rho.powf(theta)) / (1.0 - rho)).ln()
    }
}

const GL8_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_W: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362_0,
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// `<<ln phi(min/max)>>` over a cell pair by tensor Gauss-Legendre in each
/// cell's own parametrization. Distinct cells are disjoint so the sign of
/// `ln x - ln y` is fixed and the integrand analytic; the diagonal pair is
/// folded onto the triangle below its kink.
fn avg_ln_phi_pair(g: &HalfLineGrid, i: usize, j: usize, theta: f64) -> f64 {
    let lp = |x: f64, y: f64| {
        let lx = if x > 0.0 { x.ln() } else { -690.0 };
        let ly = if y > 0.0 { y.ln() } else { -690.0 };
        ln_phi(theta, (-(lx - ly).abs()).max(-690.0))
    };
    let mut acc = 0.0;
    if i == j {
        // 2 * int_0^1 int_0^1 tau * f(tau, tau*s) ds dtau
        for (k, &tk) in GL8_X.iter().enumerate() {
            let tau = 0.5 * (1.0 + tk);
            let x = cell_point(g, i, tau);
            for (l, &tl) in GL8_X.iter().enumerate() {
                let s = 0.5 * (1.0 + tl);
                let y = cell_point(g, j, tau * s);
                acc += GL8_W[k] * GL8_W[l] * tau * lp(x, y);
            }
        }
        return 2.0 * acc / 4.0;
    }
    for (k, &tk) in GL8_X.iter().enumerate() {
        let x = cell_point(g, i, 0.5 * (1.0 + tk));
        for (l, &tl) in GL8_X.iter().enumerate() {
            let y = cell_point(g, j, 0.5 * (1.0 + tl));
            acc += GL8_W[k] * GL8_W[l] * lp(x, y);
        }
    }
    acc / 4.0
}

/// Average of `ln|x - y|` over the cell pair `(i, j)` of one grid.
pub(crate) fn pair_ln_avg(g: &HalfLineGrid, i: usize, j: usize) -> f64 {
    let inx = |k: usize| g.cell_model(k) == CellModel::UniformInX;
    if inx(i) && inx(j) {
        let (a, b) = g.cell_bounds(i);
        let (c, d) = g.cell_bounds(j);
        return (h2(b - c) - h2(b - d) - h2(a - c) + h2(a - d)) / ((b - a) * (d - c));
    }
    // Put a v-parametrized cell outside and reuse the 1D engine inside.
    let (oi, ij) = if !inx(i) { (i, j) } else { (j, i) };
    let outer = VCell::from_grid(g, oi);
    let f = |u: f64| cell_avg_ln_abs(g, ij, Complex64::new(outer.x(u), 0.0));
    let du = outer.vr - outer.vl;
    let val = if oi == ij {
        adaptive(&f, outer.vl, outer.vr, 1e-11, 18)
    } else if ij + 1 == oi || oi + 1 == ij {
        let target = if ij < oi { outer.vl } else { outer.vr };
        let cuts = geometric_cuts(outer.vl, outer.vr, target, 16);
        adaptive_split(&f, outer.vl, outer.vr, &cuts, 1e-11, 16)
    } else {
        gl16(&f, outer.vl, outer.vr)
    };
    val / du
}

/// Dense energy matrix `e_ij = <<ln 1/|x-y|>>` over cell pairs (row-major).
pub(crate) fn log_energy_matrix(g: &HalfLineGrid) -> Vec<f64> {
    let n = g.n_cells();
    let mut e = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = -pair_ln_avg(g, i, j);
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    e
}

/// Dense theta energy matrix `e_ij = <<ln 1/|x^theta - y^theta|>>`.
pub(crate) fn theta_energy_matrix(g: &HalfLineGrid, theta: f64) -> Vec<f64> {
    let n = g.n_cells();
    if theta == 1.0 {
        return log_energy_matrix(g);
    }
    let ln_avgs: Vec<f64> = (0..n).map(|i| avg_ln_x_cell(g, i)).collect();
    let mut e = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let base = pair_ln_avg(g, i, j);
            let lnmax = if i == j { avg_ln_max_diag(g, i) } else { ln_avgs[j.max(i)] };
            let v = -(base + (theta - 1.0) * lnmax + avg_ln_phi_pair(g, i, j, theta));
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    e
}

/// Energy row of a point source at the signed coordinate `s` (magnitude
/// axis of the grid): `<ln 1/|x - s|>` per cell.
pub(crate) fn log_atom_row(g: &HalfLineGrid, s: f64) -> Vec<f64> {
    let z = Complex64::new(s, 0.0);
    (0..g.n_cells())
        .map(|i| -cell_avg_ln_abs(g, i, z))
        .collect()
}

/// Theta-kernel energy row of an on-axis point source at `s >= 0`:
/// `<ln 1/|x^theta - s^theta|>` per cell.
pub(crate) fn theta_atom_row_onaxis(g: &HalfLineGrid, theta: f64, s: f64) -> Vec<f64> {
    let st = s.powf(theta);
    let ls = if s > 0.0 { s.ln() } else { -1e30 };
    (0..g.n_cells())
        .map(|i| {
            let base = cell_avg_ln_abs(g, i, Complex64::new(s, 0.0));
            // <ln max(x,s)>: exact when the cell is on one side of s.
            let (a, b) = g.cell_bounds(i);
            let lnmax = if b <= s {
                ls
            } else if a >= s {
                avg_ln_x_cell(g, i)
            } else {
                // straddling cell: integrate by samples
                let f = |tau: f64| cell_point(g, i, tau).max(s).ln();
                gl16(&f, 0.0, 1.0)
            };
            let phi = gl16(
                &|tau: f64| {
                    let x = cell_point(g, i, tau).max(1e-300);
                    ln_phi(theta, -((x.ln() - ls).abs()).min(690.0))
                },
                0.0,
                1.0,
            );
            let _ = st;
            -(base + (theta - 1.0) * lnmax + phi)
        })
        .collect()
}

/// Average of `-ln(x^theta + c)` per cell for an off-axis source, `c > 0`.
pub(crate) fn theta_atom_row_offaxis(g: &HalfLineGrid, theta: f64, c: f64) -> Vec<f64> {
    (0..g.n_cells())
        .map(|i| {
            let f = |tau: f64| -(cell_point(g, i, tau).powf(theta) + c).ln();
            match g.cell_model(i) {
                CellModel::UniformInX => gl16(&f, 0.0, 1.0),
                CellModel::UniformInV => {
                    // Split off theta*ln x, which has an exact average, and
                    // integrate the bounded remainder.
                    let lx = avg_ln_x_cell(g, i);
                    let (a, _) = g.cell_bounds(i);
                    if a.powf(theta) > 1e3 * c {
                        let rest = gl16(
                            &|tau: f64| {
                                let x = cell_point(g, i, tau);
                                -(1.0 + c / x.powf(theta)).ln()
                            },
                            0.0,
                            1.0,
                        );
                        -theta * lx + rest
                    } else {
                        adaptive(&f, 0.0, 1.0, 1e-11, 16)
                    }
                }
            }
        })
        .collect()
}

/// Theta-deformed energy of a positive measure on `[0, inf)`:
/// `I_theta(m) = double integral of log 1/|x^theta - y^theta| dm dm`.
/// Cell diagonals use the regularized within-cell average; the (infinite)
/// self-interaction of atoms is excluded.
pub fn quadratic_energy(m: &GridMeasure, theta: f64) -> Result<f64> {
    let g = m.grid();
    let e = theta_energy_matrix(g, theta);
    let n = g.n_cells();
    let w = m.cell_masses();
    let mut total = 0.0;
    for i in 0..n {
        if w[i] == 0.0 {
            continue;
        }
        let row = &e[i * n..(i + 1) * n];
        let mut acc = 0.0;
        for j in 0..n {
            acc += row[j] * w[j];
        }
        total += w[i] * acc;
    }
    for (k, a) in m.atoms().iter().enumerate() {
        if a.position < 0.0 {
            return Err(Error::Domain("theta energy atom off [0, inf)".into()));
        }
        let row = theta_atom_row_onaxis(g, theta, a.position);
        let mut acc = 0.0;
        for j in 0..n {
            acc += row[j] * w[j];
        }
        total += 2.0 * a.mass * acc;
        for b in m.atoms().iter().skip(k + 1) {
            let d = (a.position.powf(theta) - b.position.powf(theta)).abs();
            if d == 0.0 {
                return Err(Error::Singularity(
                    "coincident atoms in theta energy".into(),
                ));
            }
            total -= 2.0 * a.mass * b.mass * d.ln();
        }
    }
    Ok(total)
}

/// Average of the logarithmic potential of `sigma` over each cell of the
/// target grid (the target may be on either side; `sigma` keeps its own).
pub(crate) fn avg_potential_rows(target: &HalfLineGrid, sigma: &GridMeasure) -> Vec<f64> {
    let n = target.n_cells();
    let sgn = target.side().sign();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = VCell::from_grid(target, i);
        let f = |u: f64| {
            let x = sgn * c.x(u);
            sigma
                .log_potential(Complex64::new(x, 0.0))
                .unwrap_or(f64::NAN)
        };
        let same_side = sigma.side() == target.side();
        let val = if same_side {
            // The source may overlap the cell: integrate adaptively.
            adaptive(&f, c.vl, c.vr, 1e-10, 16)
        } else if i == 0 {
            // Opposite sides only touch at the origin.
            let cuts = geometric_cuts(c.vl, c.vr, c.vl, 12);
            adaptive_split(&f, c.vl, c.vr, &cuts, 1e-10, 14)
        } else {
            gl16(&f, c.vl, c.vr)
        };
        out.push(val / (c.vr - c.vl));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{HalfLineGrid, Side};
    use crate::measure::GridMeasure;
    use crate::quad::adaptive;

    #[test]
    fn theta_one_reduces_to_log_energy() {
        let g = HalfLineGrid::new(Side::Positive, 2, 48, 0.9).unwrap();
        let mut m = GridMeasure::zero(g.clone());
        for i in 0..48 {
            let (a, b) = g.cell_bounds(i);
            let lo = a.clamp(1.0, 2.0);
            let hi = b.clamp(1.0, 2.0);
            m.cell_masses_mut()[i] = hi - lo;
        }
        let e1 = m.theta_energy(1.0).unwrap();
        let e = log_energy_matrix(&g);
        let n = 48;
        let w = m.cell_masses();
        let mut direct = 0.0;
        for i in 0..n {
            for j in 0..n {
                direct += w[i] * w[j] * e[i * n + j];
            }
        }
        assert!((e1 - direct).abs() < 1e-12);
    }

    #[test]
    fn half_theta_atoms_cross_term_vanishes() {
        // m = (delta_1 + delta_4)/2, theta = 1/2: |1 - sqrt 4| = 1, so the
        // off-diagonal part of the energy is zero.
        let g = HalfLineGrid::new(Side::Positive, 2, 32, 0.9).unwrap();
        let m = GridMeasure::atom_on(g.clone(), 1.0, 0.5)
            .unwrap()
            .axpy(1.0, &GridMeasure::atom_on(g, 4.0, 0.5).unwrap())
            .unwrap();
        let e = m.theta_energy(0.5).unwrap();
        assert!(e.abs() < 1e-15, "got {e}");
    }

    #[test]
    fn uniform_theta_energy_matches_adaptive_oracle() {
        // Uniform measure on a node-aligned window near [1,2], theta = 1/2.
        // Oracle: the inner integral has the elementary antiderivative
        //   int 2u ln|u-c| du = (u^2-c^2) ln|u-c| - u^2/2 - c u,
        // and the outer integral is done adaptively.
        let g = HalfLineGrid::new(Side::Positive, 2, 256, 0.8).unwrap();
        let mut m = GridMeasure::zero(g.clone());
        let mut lo = f64::MAX;
        let mut hi = f64::MIN;
        for i in 0..256 {
            let (a, b) = g.cell_bounds(i);
            if a >= 1.0 - 1e-12 && b <= 2.0 + 1e-12 {
                m.cell_masses_mut()[i] = b - a;
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        let inner = |c: f64| {
            let anti = |u: f64| {
                let d: f64 = u - c;
                if d == 0.0 {
                    -u * u / 2.0 - c * u
                } else {
                    (u * u - c * c) * d.abs().ln() - u * u / 2.0 - c * u
                }
            };
            anti(hi.sqrt()) - anti(lo.sqrt())
        };
        // I_theta = -int inner(sqrt y) dy over the window (kernel log 1/|.|)
        let oracle = -adaptive(&|y: f64| inner(y.sqrt()), lo, hi, 1e-12, 32);
        let e = m.theta_energy(0.5).unwrap();
        assert!((e - oracle).abs() < 1e-6, "got {e}, oracle {oracle}");
    }

    #[test]
    fn negative_mass_is_rejected() {
        let g = HalfLineGrid::new(Side::Positive, 2, 32, 0.9).unwrap();
        let mut m = GridMeasure::zero(g);
        m.cell_masses_mut()[3] = -1.0;
        assert!(m.theta_energy(0.5).is_err());
    }
}
