//! Dehn twist factorizations of Lefschetz fibrations over the sphere, the
//! operations used to build them, and the invariants of their total spaces.

pub mod factorization;
pub mod fixtures;
pub mod fpgroups;
pub mod invariants;
pub mod model;
pub mod scenario;
pub mod symplectic;
