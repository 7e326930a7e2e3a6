//! Finite-lattice engine for generalized supermodular games.
//!
//! The crate is layered bottom-up:
//!
//! * [`poset`]: finite posets, lattice operations, sublattice and
//!   subcompleteness checks, increasing correspondences, Hasse export.
//! * [`topology`]: finite topologies, interval topologies, restrictions and
//!   products.
//! * [`omega`]: exact model of the infinite lattice made of an anti-chain
//!   with a bottom and top added, used to refute two claims relating
//!   subcompleteness, compactness and closedness.
//! * [`game`] and [`format`]: generalized games with feasible profile sets and
//!   exact rational payoffs, their validation, and the JSON file format.
//! * [`equilibria`]: equilibrium sets by enumeration and by monotone
//!   iteration, fixed-point identities, and order-structure reports.

pub mod catalogue;
pub mod equilibria;
pub mod error;
pub mod format;
pub mod gallery;
pub mod game;
pub mod omega;
pub mod poset;
pub mod random;
pub mod rational;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
