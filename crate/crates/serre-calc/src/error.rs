use thiserror::Error;

use crate::weights::Sym;

/// Everything the library can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),

    #[error("parameters are not {required}-generic (best level: {actual})")]
    NotGeneric { required: u32, actual: i64 },

    #[error("index {index} carries {sym} outside J_rho, impossible for an element of P")]
    ImpossibleTType { index: usize, sym: Sym },

    #[error("cannot shift at index {0}: t_j = y_j z_j there")]
    IllegalShift(usize),

    #[error("tuple {0} is not in {1}")]
    NotMember(String, &'static str),

    #[error("star involution not realizable: property ({property}) fails at {witness}")]
    StarNotRealizable { property: char, witness: String },

    #[error("index sets overlap: {0} and {1}")]
    Overlap(String, String),

    #[error("ideals are not nested")]
    NotNested,

    #[error("suite `{suite}` needs {required}-generic parameters (best level: {actual})")]
    SuiteNotGeneric { suite: &'static str, required: u32, actual: i64 },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite `{0}`; available: {1}")]
    UnknownSuite(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
