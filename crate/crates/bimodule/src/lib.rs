//! Braid words and the dg bimodules over `A_n` they determine.
//!
//! Each crossing `σ_i^±` gives a small bimodule (a mapping cone built
//! from `A_n` and the modules `P`, `Q` at crossing `i`), and a braid word
//! gives their tensor product over `A_n`. Two representations are
//! provided: explicit bimodules ([`DgBimodule`]) with derived tensor
//! products through the Koszul resolution, and free models
//! ([`FreeBimodule`]) that stay small under repeated tensoring.

mod braid;
mod elementary;
mod free;
mod module;
mod tensor;

pub use braid::{BraidError, BraidWord, Letter, Sign};
pub use elementary::{
    elementary, identity, outer_product, projectives, sigma_minus, sigma_plus, Side, SideModule, NEG_SHIFT, POS_SHIFT,
    PROJECTIVE_ALIASES,
};
pub use free::{FreeBimodule, FreeGen, LetterModels, Term};
pub use module::{DgBimodule, Generator};
pub use tensor::{braid_bimodule, derived_tensor, tensor};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BimoduleError {
    #[error("crossing index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("bimodules over A_{0} and A_{1} cannot be combined")]
    AlgebraMismatch(usize, usize),
    #[error("action tables have the wrong shape")]
    Shape,
    #[error("{side} action of arrow {arrow} on generator {gen} breaks vertex or grading rules")]
    BadAction {
        gen: usize,
        arrow: usize,
        side: &'static str,
    },
    #[error("the action on generator {0} does not satisfy the relations of A_n")]
    RelationViolated(usize),
    #[error("left and right actions do not commute on generator {0}")]
    ActionsDoNotCommute(usize),
    #[error("differential of generator {0} has the wrong degree or vertices")]
    BadDifferential(usize),
    #[error("differential squares to a nonzero map at generator {0}")]
    NotSquareZero(usize),
    #[error("differential does not commute with the actions at generator {0}")]
    NotDgMap(usize),
}
