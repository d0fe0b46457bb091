//! Central Delannoy paths, Kimberling paths, and the bijection between
//! `D_n` and `K_{n+1,n}`.
//!
//! - [`lattice`]: the path types and their text forms.
//! - [`bijection`]: the forward map [`phi`] and its inverse [`phi_inverse`].
//! - [`counting`]: exact counts, enumeration, and uniform sampling.
//! - [`geometry`]: subdiagonal predicates and per-step diagonal flags.
//! - [`harness`]: exhaustive verification sweeps.

pub mod bijection;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod lattice;

pub use bijection::{
    merge_tagged, phi, phi_inverse, phi_inverse_traced, step_labels, StepLabels, Tag, TaggedValue,
};
pub use counting::{BigCount, SampleSeed};
pub use error::{Error, Result};
pub use lattice::{CentralIndex, DelannoyPath, KimberlingPath, LatticePoint, Step};
