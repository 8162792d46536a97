//! hopfkit: exact computational algebra for Hopf-Galois theory.
//!
//! The crate builds up finite-dimensional structures over Q and GF(p) in
//! layers: exact linear algebra, algebras and bimodules with balanced
//! tensor products, coalgebras and Hopf algebras, corings and their
//! comodules, Doi-Koppinen Hopf modules with the Galois and fusion
//! operators, and a Hilbert 90 layer that classifies semilinear twists by
//! cocycle cohomology. A CLI (`hopfkit`) runs the verification tasks on
//! structured input documents or on the shipped example library.
//!
//! All verification is exact: every law is an identity of matrices over an
//! exact field, reported with a witnessing index when it fails.

pub mod algebra;
pub mod check;
pub mod cli;
pub mod coalg;
pub mod coring;
pub mod exactla;
pub mod hilbert90;
pub mod hopfmod;
pub mod library;
