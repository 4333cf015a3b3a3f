//! Exact short-vector counting for integral lattices, together with the
//! counting bounds, Gaussian-mass estimates and root-system checks that
//! apply to them.
//!
//! Everything here is `no_std` with `alloc`. Lattices are carried as integer
//! Gram matrices; counts are arbitrary-precision integers. Floating point is
//! used only for pruning radii (always re-checked exactly), real-valued
//! bound evaluators and Gaussian masses.
//!
//! The std companion crate `intlat` adds the descriptor file format, report
//! writers, parallel counting and the command-line front end.

#![no_std]

extern crate alloc;

pub mod arithmetic;
pub mod bounds;
pub mod enumeration;
mod error;
pub mod lattice;
pub mod linalg;
pub mod roots;
mod sum;
pub mod theta;

pub use enumeration::{Census, Method, Plan, ShortVectorList, DEFAULT_NODE_LIMIT};
pub use error::{Error, Result};
pub use lattice::{Family, GramMatrix, Lattice, LatticeDescriptor, ValidationReport, Violation};
