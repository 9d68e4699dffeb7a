use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),
    #[error("edges {0} and {1} share an endpoint")]
    SharedEndpoint(usize, usize),
    #[error("edge index {index} out of range for a graph with {len} edges")]
    EdgeIndexOutOfRange { index: usize, len: usize },
    #[error("clumps must be non-empty consecutive intervals covering 1..={0} in order")]
    NonContiguousClump(usize),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("no stable configuration exists for weights {0:?}: some weight is at least half the total")]
    NoStableConfiguration(Vec<u32>),
    #[error("graph is not a regular graph whose edges all cross the bipartition")]
    NotNeutralRegular,
    #[error("graph is not regular")]
    NotRegular,
    #[error("vertex count {0} is odd")]
    OddVertexCount(usize),
    #[error("multidegree {degree:?} is not a positive multiple of weights {weights:?}")]
    NotMultipleOfWeight { degree: Vec<usize>, weights: Vec<u32> },
    #[error("vertex count {n} is too small (need at least {min})")]
    VertexCountTooSmall { n: usize, min: usize },
    #[error("exponent {exponent} must be odd with 1 < i < n-1 (n = {n})")]
    BadExponent { exponent: usize, n: usize },
    #[error("graph is not a perfect matching")]
    NotAMatching,
    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("multidegree mismatch: expected {expected:?}, got {actual:?}")]
    MultidegreeMismatch { expected: Vec<usize>, actual: Vec<usize> },
    #[error("total weight {0} is odd; the lowest-degree invariants live in degree 2w (epsilon_w = 2), pass the doubled weights")]
    OddTotalWeight(u64),
    #[error("weights {0:?} have no semistable points (some weight exceeds half the total)")]
    EmptyModuli(Vec<u32>),
    #[error("weights {0:?} reduce to fewer than 3 points")]
    DegenerateModuli(Vec<u32>),
    #[error("configuration is not in the chart: points {0} and {1} coincide across halves")]
    NotInChart(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("invalid projective point {0}: both coordinates are zero")]
    ZeroPoint(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used by the CLI when surfacing errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::LoopEdge(_) => "LoopEdge",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::VertexCountMismatch(..) => "VertexCountMismatch",
            Error::OddDegreeSum(_) => "OddDegreeSum",
            Error::SharedEndpoint(..) => "SharedEndpoint",
            Error::EdgeIndexOutOfRange { .. } => "EdgeIndexOutOfRange",
            Error::NonContiguousClump(_) => "NonContiguousClump",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NoStableConfiguration(_) => "NoStableConfiguration",
            Error::NotNeutralRegular => "NotNeutralRegular",
            Error::NotRegular => "NotRegular",
            Error::OddVertexCount(_) => "OddVertexCount",
            Error::NotMultipleOfWeight { .. } => "NotMultipleOfWeight",
            Error::VertexCountTooSmall { .. } => "VertexCountTooSmall",
            Error::BadExponent { .. } => "BadExponent",
            Error::NotAMatching => "NotAMatching",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::MultidegreeMismatch { .. } => "MultidegreeMismatch",
            Error::OddTotalWeight(_) => "OddTotalWeight",
            Error::EmptyModuli(_) => "EmptyModuli",
            Error::DegenerateModuli(_) => "DegenerateModuli",
            Error::NotInChart(..) => "NotInChart",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::ZeroPoint(_) => "ZeroPoint",
            Error::Parse(_) => "Parse",
        }
    }
}
