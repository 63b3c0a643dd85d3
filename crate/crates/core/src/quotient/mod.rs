//! Normal subgroupoids of finite groupoids, choice families and the quotient groupoid.

mod construct;
mod iso;
mod normality;
mod pmp;
mod subgroupoid;
mod suite;
mod witness;

pub use construct::{build_quotient, universal_factor, QuotientResult};
pub use iso::find_isomorphism;
pub use normality::{is_normal, ChoiceFamily, NormalityVerdict, Section};
pub use pmp::{quotient_is_pmp, PmpVerdict};
pub use subgroupoid::{conjugation_certifies, in_end, Subgroupoid};
pub use suite::{normality_property_suite, SuiteInput};
pub use witness::{normality_witness_hnn, HnnModelAction, HnnWitness, WitnessPiece};

use crate::groupoid::{ArrowId, GroupoidError, UnitId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("not a wide subgroupoid: {0}")]
    NotSubgroupoid(String),
    #[error("section {section} is not in End(S): conjugate of {witness} leaves S")]
    NotInEnd { section: usize, witness: ArrowId },
    #[error("section {section} has a domain that is not S-invariant at {unit}")]
    DomainNotInvariant { section: usize, unit: UnitId },
    #[error("section {section} is not an r-section with range in its domain at {unit}")]
    BadSection { section: usize, unit: UnitId },
    #[error("class of {arrow} at {unit} is not covered by the family")]
    Uncovered { unit: UnitId, arrow: ArrowId },
    #[error("sections {first} and {second} hit the same class at {unit}")]
    DoublyCovered { unit: UnitId, first: usize, second: usize },
    #[error("family must start with the unit section")]
    NoUnitSection,
    #[error("quotient data depend on the orbit representative ({0})")]
    Inconsistent(String),
    #[error("S is not normal: {g}^-1 {sigma} {g} is not in S")]
    NotNormal { g: ArrowId, sigma: ArrowId },
    #[error("homomorphism does not kill S at {0}")]
    DoesNotKill(ArrowId),
    #[error("map is not a homomorphism at {0}, {1}")]
    NotHomomorphism(ArrowId, ArrowId),
    #[error("parent groupoid is not measure preserving")]
    ParentNotPmp,
    #[error("labeling not equivariant at point {point} for generator {generator}")]
    NotEquivariant { point: usize, generator: usize },
    #[error("model data malformed: {0}")]
    BadModel(String),
    #[error("search bound of {0} exceeded")]
    SearchBound(usize),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}
