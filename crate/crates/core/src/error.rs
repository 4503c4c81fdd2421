use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("valency must be at least 3, got {0}")]
    InvalidValency(u32),
    #[error("letter {letter} at position {position} is out of range for valency {n}")]
    InvalidLetter {
        position: usize,
        letter: u32,
        n: u32,
    },
    #[error("boundary period must be nonempty")]
    EmptyPeriod,
    #[error("the root is not the child endpoint of an edge")]
    RootEdge,
    #[error("edge parameter must lie strictly between 0 and 1")]
    EdgeParameter,
    #[error("points belong to trees of different valency ({0} vs {1})")]
    ValencyMismatch(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloydError {
    #[error("prefix entry h({0}) must be strictly positive")]
    NonPositivePrefix(usize),
    #[error("invalid tail parameter: {0}")]
    InvalidTail(String),
    #[error("tolerance must be strictly positive")]
    InvalidTolerance,
    #[error("tolerance unattainable within {budget} terms")]
    ToleranceUnattainable { budget: usize },
    #[error("edge {0} is missing from the assignment")]
    MissingEdge(String),
    #[error("edge length for {0} must be strictly positive")]
    NonPositiveLength(String),
    #[error("edge {0} is deeper than the assignment depth limit")]
    EdgeTooDeep(String),
    #[error("no edge of depth {0} in the assignment")]
    EmptyDepthClass(usize),
    #[error("metric specifications use different trees")]
    TreeMismatch,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("local permutation {0:?} is not a bijection")]
    NotABijection(Vec<u32>),
    #[error("permutation at {address} has arity {found}, expected {expected}")]
    ArityMismatch {
        address: String,
        expected: usize,
        found: usize,
    },
    #[error("automorphism is not a translation")]
    NotATranslation,
    #[error("operation requires a unitary translation, got translation length {0}")]
    NotUnitary(u64),
    #[error("classification check failed: {0}")]
    ClassificationCheck(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EstimateError {
    #[error("nothing to compare: the sample or edge set is empty")]
    Empty,
    #[error("distance from {0} to {1} is not separated from zero; lower the tolerance")]
    Unresolved(String, String),
    #[error(transparent)]
    Floyd(#[from] FloydError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("line {line}: invalid value for `{key}`: {message}")]
    InvalidValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("invalid point `{0}`")]
    Point(String),
    #[error("invalid rational `{0}`")]
    Rational(String),
}
