use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing an ideal.
///
/// Variants split into validation failures (bad input) and scale refusals
/// (input is fine but exceeds one of the size limits); see
/// [`Error::is_scale`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty ideal")]
    EmptyIdeal,

    #[error("unit ideal")]
    UnitIdeal,

    #[error("monomial has {got} exponents, expected {expected}")]
    Arity { expected: usize, got: usize },

    #[error("not zero-dimensional: x{var}")]
    NotZeroDimensional { var: usize },

    #[error("not squarefree: {monomial}")]
    NotSquarefree { monomial: String },

    #[error("not a standard monomial: {monomial}")]
    NotStandard { monomial: String },

    #[error("variable exhausted: x{var} has pure-power bound 1")]
    VariableExhausted { var: usize },

    #[error("{what} is not a multiple of any generator")]
    NoDividingGenerator { what: String },

    #[error("cone vertex {vertex} already belongs to the complex")]
    ConeVertexPresent { vertex: String },

    #[error("k must be at least 1")]
    ZeroPower,

    #[error("scale: {what} is {got}, limit is {limit}")]
    Scale {
        what: &'static str,
        got: u128,
        limit: u128,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("homology ranks disagree between fields at multidegree {multidegree}: {detail}")]
    FieldDisagreement { multidegree: String, detail: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Scale refusals are reported with a distinct exit status by the CLI.
    pub fn is_scale(&self) -> bool {
        matches!(self, Error::Scale { .. })
    }

    pub(crate) fn scale(
        what: &'static str,
        got: impl TryInto<u128>,
        limit: impl TryInto<u128>,
    ) -> Self {
        Error::Scale {
            what,
            got: got.try_into().unwrap_or(u128::MAX),
            limit: limit.try_into().unwrap_or(u128::MAX),
        }
    }
}
