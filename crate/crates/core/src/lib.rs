//! Exact combinatorics of spherical systems: localizations, quotients by
//! distinguished colors, orbit images under the morphism defined by a
//! divisor, and closed-form bijectivity criteria for the normalization.

pub mod criteria;
pub mod exact;
pub mod io;
pub mod orbits;
pub mod quotients;
pub mod rootsys;
pub mod spherical;

pub use rootsys::catalogue::RootKind;
pub use rootsys::{DynkinKind, RootSystem, RootVec, WeightVec};
pub use spherical::{Color, ColorKind, Divisor, SphericalSystem};

/// Exact scalar used by the feasibility and kernel computations.
pub type Rational = num_rational::BigRational;

/// Machine-word rationals, usable with the generic routines in [`exact`].
pub type SmallRational = num_rational::Rational64;
