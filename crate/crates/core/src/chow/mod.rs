//! Chow ring presentations and their graded integral groups.

mod compare;
mod groups;
mod keel;
mod presentation;
mod sr;

use thiserror::Error;

use crate::fan::FanError;

pub use compare::{
    compare_presentations, find_comparison_map, toric_pullback_map, CompareReport, MapSearch,
    RelationCheck,
};
pub use groups::{graded_group, graded_groups, GradedIdeal, GradedPiece};
pub use keel::{
    iterated_keel, iterated_keel_literal, keel_relation, keel_relation_in, keel_step,
    kernel_generator, line_bundle_class, q_polynomial, q_polynomial_in, stratum_cycle_class,
    thm_d_presentation,
};
pub use presentation::{
    c1_name, eps_name, kernel_token_name, BaseRing, BaseToken, Generator, GradedPresentation,
    PresentationExport, HYPERPLANE,
};
pub use sr::sr_presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("variable {0} is not part of the presentation")]
    UnknownVariable(String),
    #[error("generator {0} is declared twice")]
    DuplicateGenerator(String),
    #[error("Q_{{{m},{h}}} is undefined")]
    InvalidQ { m: usize, h: usize },
    #[error("invalid levels {levels:?} for n = {n}")]
    InvalidLevels { n: usize, levels: Vec<usize> },
    #[error("base ring mismatch: {0}")]
    BaseMismatch(String),
    #[error("graded groups are not computed over a symbolic base")]
    SymbolicGroups,
    #[error("degree {degree} exceeds the top degree {top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("invalid comparison map: {0}")]
    BadMap(String),
    #[error("profile has total length {found}, expected {expected}")]
    ProfileTotal { expected: usize, found: usize },
}
