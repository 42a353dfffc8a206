use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the categorical constructions.
///
/// Object and element fields hold rendered descriptions so the error stays
/// cheap to clone and easy to print in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("duplicate element {element} in {set}")]
    DuplicateElement { set: String, element: String },

    #[error("unknown element {element} in {set}")]
    UnknownElement { set: String, element: String },

    #[error("table is not total on {set}: {problem}")]
    NotTotal { set: String, problem: String },

    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },

    #[error("codomain mismatch: expected {expected}, found {found}")]
    CodomainMismatch { expected: String, found: String },

    #[error("enumeration needs {} items but the limit is {limit}", render_required(*.required))]
    EnumerationTooLarge { required: u128, limit: usize },

    #[error("base mismatch: expected {expected}, found {found}")]
    BaseMismatch { expected: String, found: String },

    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },

    #[error("triangle does not commute at {witness}")]
    TriangleDoesNotCommute { witness: String },

    #[error("cone does not commute at {witness}")]
    ConeDoesNotCommute { witness: String },

    #[error("shape mismatch: {reason}")]
    ShapeMismatch { reason: String },
}

fn render_required(required: u128) -> String {
    if required == u128::MAX {
        "more than 2^128".to_string()
    } else {
        required.to_string()
    }
}

impl Error {
    pub(crate) fn too_large(required: u128, limit: usize) -> Self {
        Error::EnumerationTooLarge { required, limit }
    }

    pub fn is_enumeration_limit(&self) -> bool {
        matches!(self, Error::EnumerationTooLarge { .. })
    }
}

/// Fails with `EnumerationTooLarge` when `required` exceeds `limit`.
pub(crate) fn guard(required: u128, limit: usize) -> Result<()> {
    if required > limit as u128 {
        Err(Error::too_large(required, limit))
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == 0 || acc == u128::MAX {
            break;
        }
    }
    acc
}
