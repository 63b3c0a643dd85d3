//! The treed quotient attached to descent data of an HNN extension, realised lazily on
//! development trees, its Maharam extension and the cost of the induced treeing.

mod descent;
mod maharam;
mod shadow;
mod tree;
mod words;

pub use descent::{validate_descent, DescentData};
pub use maharam::{
    addresses, cost_of_phi, cost_series_closed_form, cost_series_truncated, level_distance, level_weight,
    maharam_report, CostSeries, MaharamArrow, MaharamTruncation, MaharamUnit,
};
pub use shadow::{descent_shadow, shadow_report};
pub use tree::{
    address_string, degree_violations, fiber_ball, rn_cocycle, t_exponent, Address, EdgeLetter, Step, TreedArrow,
    VertexState,
};
pub use words::unit_word_check;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HnnModelError {
    #[error("invalid descent data: {0}")]
    BadDescent(String),
    #[error("invalid step or label: {0}")]
    BadStep(String),
    #[error("arrows are not composable")]
    NotComposable,
    #[error("p = q = {0}: the Maharam extension is trivial; C(Phi) = {0}")]
    Degenerate(usize),
    #[error("truncation too small to certify {0}")]
    Uncertified(String),
    #[error("ball exceeds {0} vertices")]
    BallTooLarge(usize),
}

impl From<crate::graph::BallTooLarge> for HnnModelError {
    fn from(e: crate::graph::BallTooLarge) -> Self {
        HnnModelError::BallTooLarge(e.0)
    }
}
