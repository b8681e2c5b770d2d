use thiserror::Error;

/// Errors raised by group computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("not a p-group: order {order} is not a power of {p}")]
    NotPGroup { p: u64, order: String },

    #[error("{cap} cap exceeded: limit {limit}, required {required}")]
    CapExceeded {
        cap: &'static str,
        limit: u64,
        required: String,
    },

    #[error("singular matrix over F_{p}")]
    SingularMatrix { p: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
}

impl GroupError {
    /// True for errors caused by a configured resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, GroupError::CapExceeded { .. })
    }

    pub(crate) fn cap(cap: &'static str, limit: u64, required: impl ToString) -> Self {
        GroupError::CapExceeded {
            cap,
            limit,
            required: required.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;
