#![allow(
    clippy::needless_range_loop,
    clippy::manual_is_multiple_of,
    clippy::too_many_arguments,
    clippy::type_complexity
)]

//! Representation-theoretic invariants of finite monoids.
//!
//! The crate computes, over exact rational (and where necessary cyclotomic)
//! arithmetic:
//!
//! * Green's relations, idempotents, maximal subgroups and inverse pairs
//!   ([`green`]);
//! * tilde-classes and the Fountain / ER / EL / block-group classification
//!   ([`fountain`]);
//! * sandwich matrices of regular J-classes and their one-sided
//!   invertibility over the rational group algebra ([`structure`]);
//! * induced, coinduced and partial-transformation modules, the natural map
//!   between them, and explicit projective indecomposable modules
//!   ([`modules`]);
//! * the quiver of the monoid algebra for monoids whose idempotents generate
//!   an R-trivial monoid, by three routes of increasing generality
//!   ([`quiver`]);
//! * character tables of the maximal subgroups ([`grouprep`]);
//! * an independent brute-force linear-algebra verification path on the
//!   rational monoid algebra ([`oracle`]).
//!
//! Monoids are built from Cayley tables, (partial) transformation
//! generators, or complete DFAs ([`monoid_core`], [`io`]).  Every analysis
//! reads a [`monoid_core::FiniteMonoid`], which is immutable after
//! construction and freely shareable.
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! `monoid-rep` binary exposes the same analyses as a small CLI.

pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod fountain;
pub mod green;
pub mod grouprep;
pub mod io;
pub mod linalg;
pub mod modp;
pub mod modules;
pub mod monoid_core;
pub mod oracle;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod unionfind;

pub use error::MonoidError;
pub use monoid_core::FiniteMonoid;
