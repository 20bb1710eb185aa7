use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("empty input")]
    Empty,

    #[error("matrix is not safely diagonalizable (eigenvector condition {condition:.3e})")]
    Defective { condition: f64 },

    #[error("{routine} did not converge")]
    NoConvergence { routine: &'static str },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("biorthogonality violated: |<zeta_{n}|u_{m}>| = {overlap:.3e}")]
    BiorthogonalityViolation { n: usize, m: usize, overlap: f64 },

    #[error("normalizer kappa_{index} = ({re:.3e}, {im:.3e}) is not a positive real")]
    NonPositiveKappa { index: usize, re: f64, im: f64 },

    #[error("right basis is ill conditioned (condition {condition:.3e})")]
    IllConditionedBasis { condition: f64 },

    #[error("eigenvalue {index} is zero; the modulus policy needs an invertible operator")]
    SingularWithModulusPolicy { index: usize },

    #[error("explicit kappa list is invalid: {reason}")]
    ExplicitKappaInvalid { reason: String },

    #[error("expansion does not reproduce the state (residual {residual:.3e})")]
    ReconstructionFailure { residual: f64 },

    #[error("gate matrix is not unitary (deviation {deviation:.3e})")]
    NonUnitaryGate { deviation: f64 },

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid gate: {reason}")]
    InvalidGate { reason: String },

    #[error("value {value} does not fit in a {width}-qubit register")]
    ValueOutOfRange { value: usize, width: usize },

    #[error("target state is not normalized (norm {norm:.12})")]
    UnnormalizedTarget { norm: f64 },

    #[error("post-selection branch has probability {probability:.3e}")]
    ZeroProbabilityBranch { probability: f64 },

    #[error("representation matrix is not unitary (deviation {deviation:.3e})")]
    NonUnitaryRepresentation { deviation: f64 },

    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwoDim { dim: usize },

    #[error("summand {index} is not unitary or has non-positive weight")]
    NonUnitarySummand { index: usize },

    #[error("operator is not a contraction (largest singular value {sigma_max:.6})")]
    NotAContraction { sigma_max: f64 },

    #[error("plan was built for {expected}, not {found}")]
    MethodMismatch { expected: &'static str, found: &'static str },
}
