//! Quiver-with-potential mutation, cluster seeds, and desk-scale
//! noncommutative Donaldson-Thomas series, with mechanical verification of
//! the transformation formula, the Caldero-Chapoton formula, and the
//! wall-crossing factorization as exact identities of truncated torus
//! series.
//!
//! Layout:
//! - [`quiver`]: arrow-count quivers, mutation, principal framing
//! - [`laurent`]: exact multivariate Laurent arithmetic
//! - [`potential`]: potentials, cyclic derivatives, QP mutation and reduction
//! - [`lattice`]: Grothendieck lattices, Euler pairing, mutation maps
//! - [`torus`]: truncated sign-twisted torus series and their automorphisms
//! - [`repr`]: finite-field module enumeration, point counts, Euler numbers
//! - [`cluster`]: seeds, exchange relations, F-polynomials, g- and c-vectors
//! - [`verify`]: end-to-end identity checks wiring the layers together
//! - [`acceptance`]: the criterion suite shared by tests and the CLI

pub mod acceptance;
pub mod cluster;
pub mod config;
pub mod doc;
pub mod lattice;
pub mod laurent;
pub mod potential;
pub mod quiver;
pub mod repr;
pub mod torus;
pub mod verify;

pub use config::Config;
pub use quiver::Quiver;
