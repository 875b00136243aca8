use thiserror::Error;

/// Errors raised across the library. Vertex indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("quiver has an oriented cycle through vertex {0}")]
    CyclicQuiver(usize),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("orbit of vertex {x} left the positive orthant at step {step}")]
    NonPositiveVector { x: usize, step: usize },
    #[error("integer overflow while iterating the orbit of vertex {x}")]
    Overflow { x: usize },
    #[error("horizon {horizon} too small, need {need}")]
    HorizonTooSmall { horizon: usize, need: usize },
    #[error(
        "not Serre-formal: power {step} applied to the projective at vertex {x} has cohomology in degrees {degrees:?}"
    )]
    NotSerreFormal { x: usize, step: usize, degrees: Vec<i64> },
    #[error("resolution bound {bound} exceeded")]
    ResolutionBoundExceeded { bound: usize },
    #[error("path classes do not terminate by degree {degree}")]
    InfiniteDimensional { degree: usize },
    #[error("invalid length s={s} for radical bound l={l}")]
    InvalidLength { s: usize, l: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid Kupisch series: {0}")]
    InvalidKupisch(String),
    #[error("criterion needs dominant dimension at least 2, found {domdim}")]
    CriterionInapplicable { domdim: u32 },
    #[error("not d-hereditary: {0}")]
    NotDHereditary(String),
    #[error("algebra is not triangular")]
    NotTriangular,
    #[error("Hom(DA, eA) is nonzero: a map from I_{injective} to P_{projective}")]
    GateFailed { injective: usize, projective: usize },
    #[error("elements carry different weight data")]
    MixedWeights,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
}

pub type Result<T> = std::result::Result<T, Error>;
