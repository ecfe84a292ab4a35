//! Spectra of Hermitian squares `H*_psi H_psi` of Hankel operators on the Bergman
//! space of the polydisc.
//!
//! Three engines compute the same objects by different routes:
//!
//! - [`monomial`]: closed-form rational eigenvalues for `z^n zbar^m`, with the full
//!   spectrum, multiplicity classes and essential spectrum.
//! - [`quasihomogeneous`]: eigenvalues for `f(|z|) e^{i k.theta}` from radial integrals.
//! - [`galerkin`]: the compression of `H*_psi H_psi` to a truncated monomial basis for
//!   arbitrary polynomial symbols in `z` and `zbar`, in exact or floating arithmetic.
//!
//! [`boundary`] builds the essential-spectrum predictions obtained by freezing one
//! coordinate on the unit circle, and [`weyl`] evaluates Weyl test vectors.

pub mod boundary;
pub mod eigen;
pub mod error;
pub mod galerkin;
pub mod index;
pub mod monomial;
pub mod quadrature;
pub mod quasihomogeneous;
pub mod rational;
pub mod symbol;
pub mod weyl;

pub use error::{Error, Result};
pub use index::{MultiIndex, Subset, Winding};
pub use rational::ExactScalar;
pub use symbol::{Coefficient, PolySymbol};
