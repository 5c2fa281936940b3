//! Occupation-number Fock space built on a finite model of quasi-sets.
//!
//! - [`kernel`]: q-sets whose micro-atoms carry kind and multiplicity but no
//!   identity, with weak/strong singletons, weak pairs, quasi-functions and
//!   the permutation swap.
//! - [`statistics`]: exact Maxwell–Boltzmann, Bose–Einstein and Fermi–Dirac
//!   microstate counts and tables.
//! - [`fock`]: occupation maps, the complex vector space over them, bosonic
//!   and fermionic inner products, ladder operators and their
//!   (anti)commutation checks.
//! - [`labeled`]: the labeled tensor-product formalism with symmetrizers and
//!   permutation operators, used as an independent oracle.

pub mod delta;
pub mod fock;
pub mod kernel;
pub mod labeled;
pub mod statistics;

pub use fock::{FockSpace, FockVector, LevelBasis, OccupationMap, ParticleKind};
pub use kernel::{Kind, QSet, Thing};
pub use statistics::StatisticsKind;
