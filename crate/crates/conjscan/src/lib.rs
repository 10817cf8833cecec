//! Conjugate-point criterion and streamline-period toolkit for steady
//! two-dimensional ideal flows on rectangular tori.
//!
//! The crate has two independent halves:
//!
//! 1. **Spectral side** — an exact sparse algebra of finite trigonometric
//!    polynomials on the torus with side lengths `2π/α × 2π`
//!    ([`trig`], [`field`], [`ops`]), on top of which the conjugate-point
//!    criterion for steady Euler flows is evaluated in two algebraically
//!    independent forms ([`conjugacy`]). The cellular eigenflows
//!    `ψ = −cos(nαx)cos(my)` come with exact closed forms, admissible-region
//!    predicates, and grid scans ([`kolmogorov`]).
//!
//! 2. **Planar side** — streamline travel times `T(c) = ∮ dℓ/|∇ψ|` for
//!    flows given by an analytic stream function, computed by direct time
//!    integration and by arclength quadrature ([`isochrone`], [`ode`]),
//!    distinguishing isochronal flows (elliptic vortex, `T = 2πab`) from
//!    non-isochronal ones (`ψ = r⁴/4`, `T = 2π/r²`).
//!
//! A quick taste:
//!
//! ```
//! use conjscan::geometry::TorusGeometry;
//! use conjscan::kolmogorov::KolmogorovFlow;
//! use conjscan::conjugacy;
//!
//! let geometry = TorusGeometry::new(1.0).unwrap();
//! let flow = KolmogorovFlow::new(geometry, 6, 2).unwrap();
//! let result = conjugacy::evaluate(&flow.velocity(), &flow.test_direction_1()).unwrap();
//! assert!(result.mc > 0.0);          // a conjugate point is certified
//! assert!(result.tc.unwrap() > 0.0); // ... by this time
//! assert!(result.form_gap < 1e-10);  // both criterion forms agree
//! ```
//!
//! File formats and the `conjscan` command-line tool live in [`io`] and
//! [`cli`].

pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod isochrone;
pub mod kolmogorov;
pub mod ode;
pub mod ops;
pub mod tol;
pub mod trig;

pub use conjugacy::{conjugacy_report, evaluate, ConjugacyReport, ConjugacyResult};
pub use error::{Error, Result};
pub use field::VectorField;
pub use geometry::{TorusGeometry, Wavevector};
pub use isochrone::{EllipticVortex, RadialPower, StreamFunction};
pub use kolmogorov::{KolmogorovFlow, ScanRecord};
pub use trig::TrigScalar;
