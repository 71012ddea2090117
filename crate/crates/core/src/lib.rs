//! Finite-scale toolkit for the Freese-Nation property: verifying and
//! synthesizing FN mappings, transferring them along substructures,
//! retractions, chains and quotients, playing the closure game, and checking
//! the free-algebra constructions built on top of them.

pub mod boolean;
pub mod constructions;
pub mod game;
pub mod interval;
pub mod mapping;
pub mod poset;
pub mod substructure;
pub mod text;
