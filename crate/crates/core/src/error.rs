use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial has infinite (t-1)-adic valuation")]
    InfiniteValuation,

    #[error("polynomial syntax error at offset {offset}: {message}")]
    PolySyntax { offset: usize, message: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),

    #[error("relator {index} (`{relator}`) maps to {image} under the map to Z, expected 0")]
    RelatorImage {
        index: usize,
        relator: String,
        image: i64,
    },

    #[error("the map to Z is identically zero")]
    ZeroMap,

    #[error("map has {found} values but the presentation has {expected} generators")]
    MapArity { expected: usize, found: usize },

    #[error("not a chain complex: d1 * d2 is nonzero at entry ({row}, {col})")]
    NotChainComplex { row: usize, col: usize },

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("Laurent degree span {found} exceeds the cap of {cap} during elimination")]
    DegreeCap { cap: usize, found: usize },

    #[error("{context}relator {index} (`{relator}`) does not die in the quotient")]
    InvalidQuotient {
        context: String,
        index: usize,
        relator: String,
    },

    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },

    #[error("unknown built-in example `@{0}`")]
    UnknownExample(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "formula/oracle mismatch at n = {n}: formula gives {formula}, covers oracle gives {oracle}\n{details}"
    )]
    OracleMismatch {
        n: u64,
        formula: u64,
        oracle: u64,
        details: String,
    },
}
