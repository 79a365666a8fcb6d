//! Noncommutative symmetric functions in the ribbon basis, the descent
//! classes of the symmetric group, and quasi-idempotency checks.

mod groupring;
mod idempotent;
mod internal;
mod ribbon;

pub use groupring::{groupring_multiply, groupring_oracle, GroupRingElement, Permutation, GROUP_RING_LIMIT};
pub use idempotent::{
    groupring_idempotent_check, quasi_idempotent_check, sym_membership, IdempotentFamily, IdempotentReport,
};
pub use internal::{compositions_product, descent_mask, mask_word, ReadOrder};
pub use ribbon::{ribbon_product, RibbonElement};

use thiserror::Error;

use crate::dend::DendError;
use crate::prelie::PreLieError;
use crate::trees::{PBTree, Word};

#[derive(Debug, Clone, Error)]
pub enum SymError {
    #[error("not in Sym: {first} and {second} share a canopy in degree {degree} but have different coefficients")]
    NotInSym { degree: usize, first: PBTree, second: PBTree },
    #[error("degree {degree} exceeds the group ring limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("degrees differ ({left} and {right})")]
    DegreeMismatch { left: usize, right: usize },
    #[error("word {word} has the wrong length for degree {degree}")]
    WrongWordLength { word: Word, degree: usize },
    #[error("square differs from the scaled element at {word}")]
    Mismatch { word: Word },
    #[error("coefficient of the identity word is {found}, expected {expected}")]
    Normalization { expected: String, found: String },
    #[error("unknown idempotent family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Dend(#[from] DendError),
    #[error(transparent)]
    PreLie(#[from] PreLieError),
}
