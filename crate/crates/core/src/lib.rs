//! Restriction-norm toolkit for Maass cusp forms on the union of closed
//! geodesics of a fixed positive fundamental discriminant.
//!
//! The crate is organized around the objects that enter the analysis:
//!
//! * [`quadfield`] — arithmetic of the real quadratic field `Q(sqrt(D))`:
//!   Pell data, the totally positive fundamental unit, the lattice/cone
//!   fundamental domain, ideals and the narrow class group (realized as
//!   reduction cycles of binary quadratic forms).
//! * [`geodesics`] — the dictionary between quadratic forms, primitive
//!   hyperbolic matrices and closed geodesics on the modular surface.
//! * [`hecke`] — Hecke characters of the field and Fourier coefficients of
//!   the associated theta series.
//! * [`special_functions`] — complex log-gamma, the Rankin–Selberg gamma
//!   factors, analytic conductors, and the smoothed cutoff `V(y, x)` of the
//!   approximate functional equation.
//! * [`lfunctions`] — Maass form data ingestion, central Rankin–Selberg
//!   values via the approximate functional equation, the adjoint value at 1,
//!   and the character-orthogonality reduction to fundamental-domain sums.
//! * [`restriction`] — K-Bessel evaluation, Maass form evaluation, geodesic
//!   period integrals, the Plancherel restriction-norm formula and the
//!   Waldspurger constancy test.
//! * [`analysis`] — smooth partitions of unity, the compactly supported
//!   Poisson test weight and its Fourier analysis, and lattice-region
//!   counting.
//! * [`spectral`] — a Hejhal-style solver used to produce Maass eigendata
//!   files consumed by [`lfunctions`].
//! * [`verify`] — the named verification suites and their JSON reports.

pub mod analysis;
pub mod geodesics;
pub mod hecke;
pub mod lfunctions;
pub mod precision;
pub mod quadfield;
pub mod restriction;
pub mod special_functions;
pub mod spectral;
pub mod util;
pub mod verify;

mod error;

pub use error::{Error, Result};

/// Library version string embedded in reports and CSV headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
