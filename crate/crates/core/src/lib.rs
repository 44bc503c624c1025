//! Exact bounds, witnesses and table reproduction for finite groups acting on
//! compact Riemann surfaces.
//!
//! The crate is organized bottom-up: [`signature`], [`snf`], [`abelian`],
//! [`enumerate`] and [`coset`] handle Fuchsian signatures; [`group`] holds
//! concrete finite groups; [`classify`] decides class membership; [`actions`]
//! searches generating vectors; [`bounds`] is the rule registry; [`cli`] is
//! the command-line front end.

pub mod abelian;
pub mod actions;
pub mod arith;
pub mod bounds;
pub mod classify;
pub mod cli;
pub mod config;
pub mod coset;
pub mod enumerate;
pub mod group;
pub mod signature;
pub mod snf;

/// Arbitrary-precision reduced fraction.
pub type Rational = num::BigRational;

pub use abelian::{abelianization, FiniteAbelianGroup};
pub use group::{FiniteGroup, GroupSpec};
pub use signature::Signature;
