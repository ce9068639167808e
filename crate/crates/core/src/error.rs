use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {0} exceeds the supported bound 2^40")]
    Capacity(u64),
    #[error("exponent {0} is even; odd-exponent polynomials only")]
    EvenExponent(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("shift t^{0} must be by an even power")]
    OddShift(u64),
    #[error("w^{0} is not in V' (need k = 1, 3, 7 or 9 mod 20)")]
    InvalidResidue(u64),
    #[error("substitution offset {0} is not one of 1, 3, 7, 9")]
    InvalidOffset(u64),
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("operator index ({i}, {j}) is not admissible")]
    InvalidOperator { i: i64, j: i64 },
    #[error("s_(-1,1) is only defined on V3; input has a term t^{0}")]
    NotInV3(u64),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("seed file line {line}: {msg}")]
    SeedFile { line: usize, msg: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("doubling check requires a (*) recursion")]
    NotStar,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
