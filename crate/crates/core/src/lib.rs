//! Symmetric multipartite Bell inequalities for telling W-type from
//! GHZ-type entanglement.
//!
//! * [`bellpoly`]: exact symmetric Bell polynomials, bracket notation, local
//!   bounds and frustration.
//! * [`qstate`]: W, GHZ and Dicke states, qubit observables, Bell operators,
//!   partial traces and the separable-surrogate certificate.
//! * [`wcorr`]: closed-form W-state correlators for symmetric XZ-plane
//!   measurements, usable for any number of parties.
//! * [`optim`]: angle search, see-saw maximization and the GHZ bound probe.
//! * [`polytope`]: vertices, validity, facet checks and facet enumeration of
//!   the projected symmetric local polytope.
//!
//! The math is generic over the scalar: [`scalar::ExactScalar`] for exact
//! coefficients and [`scalar::Real`] for quantum amplitudes. The aliases
//! below fix the usual choices.

pub mod bellpoly;
pub mod error;
pub mod optim;
pub mod polytope;
pub mod qstate;
pub mod scalar;
pub mod wcorr;

pub use error::{Error, Result};

/// Default exact scalar.
pub type Rational = num_rational::BigRational;

/// Bell polynomial with [`Rational`] coefficients.
pub type BellPolynomial = bellpoly::SymmetricBellPolynomial<Rational>;

/// Named inequality with [`Rational`] coefficients.
pub type Inequality = bellpoly::BellInequality<Rational>;

/// Qubit (or qudit) pure state in double precision.
pub type State = qstate::PureState<f64>;

/// Density operator in double precision.
pub type Density = qstate::DensityOperator<f64>;

/// Per-party measurement settings in double precision.
pub type Scenario = qstate::MeasurementScenario<f64>;
