//! Exact construction of the minuscule representations attached to the
//! Hermitian symmetric pairs `(A4, α3) ⊂ (D5, α5) ⊂ (E6, α6) ⊂ (E7, α7)`,
//! their homogeneous cone equations, torus stability on the weight polytope,
//! and the matching Picard-lattice combinatorics of del Pezzo surfaces.
//!
//! All arithmetic is over arbitrary-precision rationals.

#![allow(clippy::needless_range_loop)]

pub mod cases;
pub mod delpezzo;
pub mod error;
pub mod homspace;
pub mod linalg;
pub mod lp;
pub mod minrep;
pub mod permgroup;
pub mod rational;
pub mod rootlat;
pub mod stability;
pub mod suite;
pub mod wedge;

pub use cases::Case;
pub use error::{Error, Result};
pub use homspace::{ConeSpace, FormBundle, GradedPoint};
pub use minrep::{MinusculeModule, ModuleVector, Op};
pub use rational::Q;
pub use rootlat::{Basis, CartanType, LatticeVector, RootSystemData, Weight, WeylOrbitData};
pub use stability::WeightPolytope;
