//! Exact computer algebra for mode transition algebras.
//!
//! * [`partitions`]: partitions and n-labeled partitions with their counts
//!   and symmetry factors.
//! * [`heisenberg`]: normal-ordered calculus in the rank-n Heisenberg
//!   enveloping algebra, the pairing into `A = Q[h_1..h_n]` and the strong
//!   identity elements.
//! * [`peirce`]: finite-dimensional Peirce algebras: axiom validation,
//!   zig-zag algebras, idempotent splitting and the Morita functors.
//! * [`zhu`]: higher Zhu algebra decompositions as structural descriptors.
//! * [`lattice`]: dual cosets, conformal weights and graded dimensions for
//!   even-lattice VOA modules.
//!
//! All arithmetic is exact; there are no tolerances anywhere.

pub mod error;
pub mod heisenberg;
pub mod lattice;
pub mod linalg;
pub mod partitions;
pub mod peirce;
pub mod rational;
pub mod zhu;

pub use error::{Error, Result};
pub use rational::Rational;
