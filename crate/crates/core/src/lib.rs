//! Signed-permutation parity groups and the structures built on them.
//!
//! * [`signed_perm`]: signed permutations of `1..=n` and their three parities.
//! * [`group`]: closures, kernels, the group `JP` and isomorphism search.
//! * [`abelian`]: parity sublattices of `Z^n`, finite quotients, exact charts.
//! * [`lattice`]: quotient-lattice complexes and their discrete rotations.
//! * [`lie`]: parity Lie algebras, monomial factorization, and the
//!   orthogonal-phase-orthogonal factorization of unitaries.

pub mod abelian;
pub mod error;
pub mod group;
pub mod lattice;
pub mod lie;
pub mod partition;
pub mod signed_perm;

pub use error::{Error, Result};
pub use group::Caps;
pub use partition::PartitionSpec;
pub use signed_perm::{ParityKind, Sign, SignedPermutation};
