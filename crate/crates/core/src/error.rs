use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("denominator of {value} vanishes modulo {p}")]
    DenominatorVanishes { value: String, p: u32 },
    #[error("polynomial syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} variables requested; at most 10 are supported")]
    TooManyVariables(usize),
    #[error("variable x{var} is outside the ring k[x0..x{}]", .nvars - 1)]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("generator is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("saturation did not stabilize within {0} colon steps")]
    SaturationCap(usize),
    #[error("improper intersection; multiplicity undefined by this operation")]
    ImproperIntersection,
    #[error("point is not on the ambient variety")]
    PointNotOnVariety,
    #[error("ideal does not define a rational point")]
    NotARationalPoint,
    #[error("zero entry in multiplicative independence test")]
    ZeroEntry,
    #[error("invariant family not classified: {0}")]
    InvariantFamilyNotClassified(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("declared decomposition does not intersect to I_Z; Hilbert functions differ in degree {degree}")]
    DecompositionMismatch { degree: u32 },
    #[error("declared component is not a primary component of I_Z: {0}")]
    BadComponent(String),
    #[error("Z must be a proper closed subscheme; its ideal is the unit ideal")]
    ImproperSubscheme,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}
