use thiserror::Error;

/// Errors raised by group constructions and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u128, cap: u64 },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("given group is not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("given subgroup is not normal in the acting group")]
    NotNormal,

    #[error("group is not solvable")]
    NotSolvable,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("group order {order} exceeds the oracle guard {guard}")]
    OracleGuardExceeded { order: u64, guard: u64 },

    #[error("invalid lattice filter: {0}")]
    InvalidFilter(String),

    #[error("layer factor is not elementary abelian")]
    NotElementaryAbelian,

    #[error("complement search space of size {size} exceeds the bound {bound}")]
    SearchSpaceExceeded { size: u128, bound: u64 },

    #[error("class list is incomplete: {0}")]
    IncompleteClasses(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
