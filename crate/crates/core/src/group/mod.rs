//! Finite groups and actions, integer lattices, HNN presentations with Britton normal forms,
//! and Bass-Serre tree balls.

mod action;
mod bass_serre;
mod finite;
mod hnn;
mod lattice;

pub use action::{translation_groupoid, FiniteGroupAction};
pub use bass_serre::{bass_serre_ball, coset_neighbours, CosetVertex};
pub use finite::{FiniteGroup, Perm};
pub use hnn::{britton_reduce, modular_hom, BrittonForm, GroupWord, HnnPresentation, Letter, Sign};
pub use lattice::Lattice;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {0} is not a permutation of the declared degree")]
    BadPermutation(usize),
    #[error("closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error("action is not a homomorphism at elements {0}, {1}")]
    NotHomomorphism(usize, usize),
    #[error("lattice generators do not span a full-rank sublattice of Z^{0}")]
    NotFullRank(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("tau does not map E- onto E+: {0}")]
    BadTau(String),
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("ball exceeded {0} vertices")]
    BallBound(usize),
    #[error("integer overflow in group arithmetic")]
    Overflow,
}

impl From<crate::graph::BallTooLarge> for GroupError {
    fn from(e: crate::graph::BallTooLarge) -> Self {
        GroupError::BallBound(e.0)
    }
}
