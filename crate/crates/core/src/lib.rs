//! Spectra of PT-symmetric Schrödinger operators on complex coordinate
//! contours, including "tobogganic" contours that wind around the branch
//! point at the origin and visit several Riemann sheets.
//!
//! The crate is organised bottom-up:
//!
//! * [`potential`] – multinomial potentials `Σ g_β (ix)^β` with exact
//!   rational exponents, evaluated branch-continuously on unwrapped points.
//! * [`wedges`] – asymptotic Stokes sectors in which bound states decay.
//! * [`contour`] – PT-symmetric parametrised contours and their analysis.
//! * [`liouville`] – the change of variables `ix = (iy)^α`.
//! * [`qe`] – the quasi-exactly solvable decadic oscillator.
//! * [`spectra`] – finite-difference discretisation, dense eigensolve and
//!   shooting refinement.
//!
//! Most of the algebra is generic over [`Scalar`] so that exponent and
//! coupling bookkeeping can run in exact rational arithmetic, while the
//! numerical parts are generic over [`Real`] (`f32`/`f64`). Concrete
//! aliases for the common instantiations live at the crate root.

pub mod acceptance;
pub mod contour;
pub mod documents;
pub mod error;
pub mod figures;
pub mod format;
pub mod liouville;
pub mod potential;
pub mod qe;
pub mod rational;
pub mod scalar;
pub mod spectra;
pub mod wedges;

pub use error::{Error, Result};
pub use rational::Rational;
pub use scalar::{Real, Scalar};

/// Double-precision potential.
pub type Potential = potential::PotentialSpec<f64>;
/// Potential with exact rational couplings.
pub type ExactPotential = potential::PotentialSpec<Rational>;
/// Double-precision unwrapped point.
pub type Point = potential::UnwrappedPoint<f64>;
/// Double-precision contour.
pub type Contour = contour::ContourSpec<f64>;
/// Double-precision QE parameters.
pub type QeParams = qe::QeParams<f64>;
/// QE parameters in exact rational arithmetic.
pub type ExactQeParams = qe::QeParams<Rational>;
/// Double-precision Liouville job.
pub type TransformJob = liouville::TransformJob<f64>;
/// Liouville job in exact rational arithmetic.
pub type ExactTransformJob = liouville::TransformJob<Rational>;
