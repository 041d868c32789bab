//! Root-system majorization and the spherical-function hierarchy.
//!
//! This crate computes with crystallographic root systems (including the
//! non-reduced BC family) and the special functions attached to them:
//!
//! - [`rootsys`] — root systems, Weyl groups, weights, multiplicity parameters;
//! - [`majorize`] — the Weyl-orbit convex-hull order, with exact-rational
//!   predicates and separating-hyperplane witnesses;
//! - [`orbital`] — Laplace transforms of adjoint-orbit measures (the
//!   Harish-Chandra / HCIZ integral), with a Monte Carlo oracle for unitary
//!   groups;
//! - [`compactfns`] — semistandard tableaux, normalized Schur polynomials and
//!   normalized characters of compact groups;
//! - [`exppoly`] — the group algebra of the weight lattice, constant-term
//!   inner products and Cherednik operators;
//! - [`hopoly`] — Heckman-Opdam polynomials, c-functions, hypergeometric
//!   evaluation at spectral points, generalized Bessel limits and sharp
//!   asymptotic envelopes;
//! - [`hgf1`] — rank-one hypergeometric functions through Gauss 2F1;
//! - [`scan`] — seeded verification / counterexample scans over all of the
//!   above, producing machine-readable reports.
//!
//! All order-theoretic predicates are exact over the rationals; floating
//! point enters only in function evaluation, quadrature and Monte Carlo.

pub mod compactfns;
pub mod exppoly;
pub mod hgf1;
pub mod hopoly;
pub mod linalg;
pub mod lp;
pub mod majorize;
pub mod numerics;
pub mod orbital;
pub mod quadrature;
pub mod ratio;
pub mod rootsys;
pub mod scan;
pub mod tol;
pub mod vector;
pub mod weyl;

pub use rootsys::{CartanFamily, CartanLabel, MultiplicityParam, RootSystem};
pub use vector::RatVec;
pub use weyl::{WeylElement, WeylGroup};

use num_rational::BigRational;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan label: {0}")]
    InvalidLabel(String),
    #[error("Weyl group enumeration exceeds bound {bound} (order is at least {reached})")]
    EnumerationBound { bound: usize, reached: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a weight-lattice point")]
    NotInLattice,
    #[error("weight is not dominant integral")]
    NotDominantIntegral,
    #[error("operation requires a reduced root system")]
    NonReduced,
    #[error("extrapolation ladder did not converge (residual {residual:.3e})")]
    ExtrapolationDiverged { residual: f64 },
    #[error("torus quadrature failed to converge after {doublings} doublings (residual {residual:.3e})")]
    QuadratureNotConverged { doublings: usize, residual: f64 },
    #[error("exact constant-term mode requires nonnegative integer multiplicities")]
    NonIntegerMultiplicity,
    #[error("support point {0:?} pairs non-integrally with a coroot")]
    NotInCherednikLattice(Vec<BigRational>),
    #[error("Gram matrix is singular; quadrature is under-resolved or weights coincide")]
    SingularGram,
    #[error("joint eigenvector is not unique up to scale at this spectral point")]
    DegenerateEigenvector,
    #[error("Gamma pole encountered at argument {0}")]
    GammaPole(f64),
    #[error("hypergeometric series did not converge ({0})")]
    SeriesNonConvergence(String),
    #[error("Monte Carlo oracle requires n >= 1")]
    EmptyMatrix,
    #[error("tableau shape has more rows than variables: {rows} > {n}")]
    TooManyRows { rows: usize, n: usize },
    #[error("partitions must have the same number of cells")]
    UnequalCellCount,
    #[error("rational limit did not converge (residual {residual:.3e})")]
    BesselNotConverged { residual: f64 },
    #[error("spectral shift leaves the dominant cone: lattice coordinate {0} is negative")]
    SpectralShiftNotDominant(i64),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
