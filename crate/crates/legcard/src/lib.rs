//! Invariants of Legendrian links presented by plat-position front diagrams.
//!
//! The library computes, in exact arithmetic:
//!
//! * the Chekanov–Eliashberg differential graded algebra (DGA) of the
//!   Lagrangian resolution of a plat front, over `Z[t_1^{±1},…,t_ℓ^{±1}]`
//!   with one invertible generator per link component ([`dga`]);
//! * augmentations of that DGA to a finite field `F_q`, graded modulo `2m`,
//!   together with Euler-characteristic bookkeeping and normalized counts
//!   ([`aug`]);
//! * normal rulings of the front, ruling polynomials, and the
//!   departure/return/switch classification of crossings ([`ruling`]);
//! * the cochain complexes `Hom(ε₁, ε₂)` of the augmentation category, their
//!   cohomology, transport isomorphisms between augmentations, isomorphism
//!   classes, automorphism counts, and homotopy cardinality ([`augcat`]).
//!
//! All computations are deterministic and allocation-level reproducible: the
//! same input yields byte-identical reports across runs and platforms.
//! Counting identities relating the four layers (augmentation counts versus
//! ruling-polynomial evaluations, homotopy cardinality versus normalized
//! counts, cohomological dualities) are implemented as a named check battery
//! in [`verify`], wired into the CLI and the test suite.
//!
//! The binary `legcard` exposes the pipeline as subcommands
//! (`dga`, `augs`, `rulings`, `cardinality`, `verify`, `conjecture`).

pub mod arith;
pub mod aug;
pub mod augcat;
pub mod cli;
pub mod dga;
pub mod front;
pub mod ruling;
pub mod verify;
