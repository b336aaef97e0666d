//! Solver and verification suite for a vector equilibrium problem on
//! half-lines and the spherical droplet / motherbody construction built
//! from its solution.
//!
//! The crate is split along the natural pipeline:
//!
//! * [`grid`] / [`measure`] — measures on half-lines stored as cell masses
//!   on a compactified graded grid, plus exact point masses;
//! * [`potential`] — logarithmic potentials, Stieltjes transforms and
//!   theta-deformed energies of such measures;
//! * [`balayage`] — closed-form balayage onto half-lines and two-interval
//!   unions, with a quadratic-programming fallback that doubles as an
//!   independent oracle;
//! * [`vep`] — the vector equilibrium solver (iterated balayage plus a
//!   Gauss-Seidel fixed-point sweep), phase classification and critical
//!   parameter location;
//! * [`mb`] — direct minimization of the equivalent single-measure
//!   functional with theta-deformed interaction, used as a cross-check;
//! * [`phi`] — the meromorphic sheet functions, their zeros, critical
//!   points and the degree-two algebraic curve;
//! * [`droplet`] — the droplet domain, boundary tracing, the spherical
//!   Schwarz function and the variational verification suite;
//! * [`sphere`] — stereographic transport between plane and sphere.
//!
//! The crate is `no_std` compatible (`alloc` required): disable default
//! features and enable `libm` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod balayage;
pub mod droplet;
pub mod err;
pub mod grid;
pub mod kernel;
pub mod mb;
pub mod measure;
pub mod phi;
pub mod potential;
pub mod qp;
pub(crate) mod quad;
pub mod sphere;
pub mod vep;

pub use err::{Error, Result};
pub use grid::{HalfLineGrid, Side};
pub use measure::{Atom, GridMeasure, JordanPair};
pub use num_complex::Complex64;
pub use potential::Limit;

