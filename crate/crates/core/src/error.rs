use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbounded")]
    Unbounded,
    #[error("empty")]
    Empty,
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polytope is lower-dimensional (affine dimension {affine_dim} in ambient dimension {dim})")]
    LowerDimensional { dim: usize, affine_dim: usize },
    #[error("polytope is not integral: vertex {0:?} is not a lattice point")]
    NotIntegral(Vec<String>),
    #[error("vertex {0:?} is not Delzant-smooth")]
    NotSmooth(Vec<String>),
    #[error("point {0:?} is not a vertex of the polytope")]
    NotAVertex(Vec<String>),
    #[error("polytope is not normal: level {level} point {point:?} is not a sum of {level} lattice points; dilate by n-1 and retry")]
    NotNormal { level: usize, point: Vec<i64> },
    #[error("valuation of zero undefined")]
    ZeroPolynomial,
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("point {0:?} has a negative coordinate")]
    NegativeCoordinate(Vec<i64>),
    #[error("slide parameter c = 0 does not define a coordinate system")]
    ZeroSlide,
    #[error("invalid slide direction: need k < l < n, got k={k}, l={l}, n={n}")]
    InvalidDirection { k: usize, l: usize, n: usize },
    #[error("polytope is not normalized: the origin must be a vertex with edges along the coordinate axes")]
    NotNormalized,
    #[error("semigroup additivity failed: level {0} + level {1}")]
    AdditivityViolated(usize, usize),
    #[error("level {0} is outside the semigroup or empty")]
    EmptyLevel(usize),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("zero orbit: weight is orthogonal to every coroot")]
    ZeroOrbit,
    #[error("simplex size must be positive")]
    NonPositiveSize,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("matrix is not strictly upper triangular")]
    NotUpperTriangular,
    #[error("lambda must be positive")]
    NonPositiveLambda,
    #[error("generator x_{0} is not of exceptional type")]
    NotExceptional(usize),
    #[error("Bott manifold is not Q-trivial")]
    NotQTrivial,
    #[error("Delta(A, lambda) is not combinatorially a hypercube")]
    NotHypercube,
    #[error("ring map has non-integral coefficients")]
    NonIntegralMap,
    #[error("ring map does not descend to an isomorphism: {0}")]
    RingMapInvalid(String),
    #[error("move not certified: A^k_l + A~^k_l = {0} < 0")]
    NotCertified(i64),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("arithmetic overflow converting {0} to a machine integer")]
    Overflow(String),
}
