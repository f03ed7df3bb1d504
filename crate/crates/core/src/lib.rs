//! Exact-arithmetic engine for generalized root systems (GRSs).
//!
//! A GRS is a finite spanning subset `R` of a Euclidean space such that for
//! all roots `a`, `b`:
//!
//! * `<a,b> < 0` implies `a + b` is a root,
//! * `<a,b> > 0` implies `a - b` is a root,
//! * `<a,b> = 0` implies `a + b` is a root iff `a - b` is a root.
//!
//! Unlike classical root systems, GRSs need not be reflection invariant, may
//! contain integer multiples of roots, and admit quotients: the image of `R`
//! under the orthogonal projection away from the span of a subset of a base
//! is again a GRS.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point anywhere, so set membership and all derived predicates
//! are exact decisions.
//!
//! The crate is `no_std` (with `alloc`): it contains only the algorithmic
//! core. Serialization, file formats and the command line front end live in
//! the companion `grskit` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bases;
pub mod catalog;
pub mod classify;
pub mod crosscheck;
pub mod grs;
pub mod linalg;
pub mod quograph;
pub mod quotient;
pub mod rat;
pub mod space;

pub use bases::{Base, BaseGraph, CartanMatrix, PositiveSystem, VirtualReflection};
pub use catalog::{DiagramInvolution, DynkinDiagram, Family, RootSystemId};
pub use grs::{Grs, RootInfo, StringInterval, Violation};
pub use rat::Rat;
pub use space::AmbientSpace;

/// Coordinate vector over exact rationals.
pub type Coords = alloc::vec::Vec<Rat>;
