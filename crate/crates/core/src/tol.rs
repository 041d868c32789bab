//! Central numerical tolerances.
//!
//! Every threshold used by evaluators, scans and the acceptance suite lives
//! here, with a note on where it comes from. Exact-rational predicates take
//! no tolerance at all; these apply only to floating-point paths.

/// Relative degeneracy threshold for discriminants: a pairing `<a, v>` below
/// this (relative to scale) routes evaluation through the perturbation ladder.
pub const DEGENERACY_REL: f64 = 1e-10;

/// Relative residual allowed between the last two diagonal entries of a
/// Richardson ladder before the extrapolation is declared divergent. The
/// residual tracks the error of the second-to-last level, so the returned
/// value is typically an order or two better than this guard.
pub const EXTRAPOLATION_REL: f64 = 1e-4;

/// Relative agreement required between successive torus-quadrature levels
/// (after Romberg acceleration) for an inner product to count as converged.
pub const QUADRATURE_REL: f64 = 1e-9;

/// Maximum grid doublings attempted by the torus quadrature.
pub const QUADRATURE_MAX_DOUBLINGS: usize = 4;

/// Orthogonality residual allowed for a quadrature-mode Heckman-Opdam
/// polynomial: `|(P, M_mu)_k| <= ORTHOGONALITY_REL * |P|_k |M_mu|_k`.
pub const ORTHOGONALITY_REL: f64 = 1e-9;

/// Series term ratio at which 2F1 summation stops.
pub const SERIES_TERM_REL: f64 = 1e-12;

/// Hard cap on 2F1 series length before reporting non-convergence.
pub const SERIES_MAX_TERMS: usize = 200_000;

/// Grid margin below which a pointwise function inequality counts as
/// violated in exact-side scans (Schur, HCIZ, rank one). Margins are
/// normalized by the larger function value, so this is a relative slack
/// for f64 evaluation noise.
pub const GRID_MARGIN: f64 = 1e-10;

/// Margin slack for spectral-mode scans, whose values pass through
/// quadrature Gram solves and Gamma ratios.
pub const SPECTRAL_MARGIN: f64 = 1e-8;

/// Relative tolerance for the HCIZ symmetry and W-invariance identities.
pub const HCIZ_REL: f64 = 1e-10;

/// Relative agreement target for the extrapolated rational (Bessel) limit.
pub const BESSEL_REL: f64 = 1e-4;

/// Residual bound for the rank-one ODE cross-check on moderate grids.
/// Finite differences at step 1e-4 leave ~1e-7 of f64 rounding noise, so
/// 1e-5 is comfortable but not vacuous.
pub const ODE_RESIDUAL: f64 = 1e-5;

/// Continued-fraction snap tolerance used when rationalizing f64 input.
pub const RATIONALIZE_TOL: f64 = 1e-12;

/// Factor by which numerical tolerances shrink when a scan violation is
/// re-checked before being surfaced as a counterexample candidate.
pub const TIGHTEN_FACTOR: f64 = 0.1;
