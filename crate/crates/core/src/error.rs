use thiserror::Error;

use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between a connection set and an isomorphism verdict.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("connection set contains 0 (mod {p})")]
    ZeroInSet { p: u64 },
    #[error("connection set is empty")]
    EmptySet,
    #[error("connection set is not closed under negation: {element} present but {missing} absent (mod {p})")]
    NotSymmetric { p: u64, element: u64, missing: u64 },
    #[error("{0} is not congruent to 1 mod 4; the Paley construction needs p = 1 (mod 4)")]
    NotCongruentOneModFour(u64),
    #[error("frequency index {j} out of range for p = {p}")]
    IndexOutOfRange { p: u64, j: u64 },
    #[error("Fourier coefficient at j = {j} has imaginary part {imag:e}")]
    ImaginaryResidualTooLarge { j: u64, imag: f64 },

    #[error("degree {0} is too small; the Grover coin needs k >= 2")]
    DegreeTooSmall(usize),
    #[error("degree {0} is odd")]
    OddDegree(usize),

    #[error("off-diagonal residual {residual:e} exceeds {threshold:e}")]
    ResidualTooLarge { residual: f64, threshold: f64 },
    #[error("matrix is not unitary: deviation {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("block {j}: eigenvalue {eigenvalue} has no conjugate partner")]
    UnpairedEigenvalue { j: usize, eigenvalue: Complex64 },
    #[error("block {j}: {count} eigenvalues off +-1, expected at most one conjugate pair: {eigenvalues:?}")]
    MoreThanOnePair {
        j: usize,
        count: usize,
        eigenvalues: Vec<Complex64>,
    },
    #[error("block {j} has no eigenvalue off +-1")]
    DegenerateBlock { j: usize },
    #[error("c = {0} is outside the open interval (-1, 1)")]
    COutOfRange(f64),
    #[error("polynomial has non-negligible imaginary coefficients ({residual:e})")]
    ComplexCoefficients { residual: f64 },
    #[error("could not resolve the c-value multiset: {0}")]
    ClusteringAmbiguous(String),

    #[error("indicator residual {residual:e} exceeds {threshold:e}")]
    RoundingResidualTooLarge { residual: f64, threshold: f64 },
    #[error("recovered set has {found} elements, expected {expected}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("recovered indicator is {value} at the origin")]
    NonzeroAtOrigin { value: f64 },
    #[error("expected {expected} c-values, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("recovered set {recovered:?} differs from the input set {original:?}")]
    RecoveredSetMismatch {
        original: Vec<u64>,
        recovered: Vec<u64>,
    },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("strongly regular inputs with k = {k}: spectral comparison says {spectral_equal}, multiplier search says {turner}")]
    MethodDisagreement {
        k: usize,
        spectral_equal: bool,
        turner: bool,
    },

    #[error("input of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("matrix shapes differ: {0}x{0} vs {1}x{1}")]
    ShapeMismatch(usize, usize),
    #[error("{count} candidate sets exceed the limit {limit}")]
    TooManySets { count: u128, limit: u128 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
