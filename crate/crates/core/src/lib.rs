//! Higher analytic torsion of the circle with a flat unitary line bundle.
//!
//! The crate evaluates the degree-0 and degree-2 torsion forms of `S¹` twisted
//! by a flat line bundle of holonomy `e^{2πia}`, `0 < a < 1`, in two
//! independent ways: by exponentiating the superconnection-type operator on a
//! truncated Fourier basis inside a truncated Grassmann algebra, and by the
//! theta-function / Poisson-dual representation of the heat traces. On top of
//! that sit the Lie-algebra cocycle on vector fields of the circle and the
//! `SL(2,ℝ)` normalization of the resulting group-cohomology class.
//!
//! Module map:
//!
//! * [`grassmann`]: truncated exterior algebra and graded operator matrices.
//! * [`spectral`]: Fourier-mode model, heat semigroup, Duhamel oracles.
//! * [`torsion`]: theta sums, the `t`-integrals, Clausen function, `T₀`, `T₂`.
//! * [`witt`]: vector fields, metric variations, Lie cocycle and exactness.
//! * [`sl2`]: hyperbolic plane, area cocycle, class coefficient.
//! * [`report`]: verification suites, sweeps and their serialized reports.

pub mod error;
pub mod grassmann;
pub mod quadrature;
pub mod report;
pub mod sl2;
pub mod spectral;
pub mod summation;
pub mod torsion;
pub mod witt;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
