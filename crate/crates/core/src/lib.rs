//! Exact jet calculus for pedal unfoldings and wave-front unfoldings.
//!
//! The symbolic side ([`jet`], [`germ`], [`classify`]) works over exact
//! rationals; [`curve`] is a binary64 lab for pedal curves and wave fronts.

pub mod classify;
pub mod corpus;
pub mod curve;
pub mod germ;
pub mod germfile;
pub mod jet;
pub mod linalg;
