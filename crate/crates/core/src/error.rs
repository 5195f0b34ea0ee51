use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid quiver presentation: {0}")]
    InvalidPresentation(String),
    #[error("relation {0} is not contained in the square of the arrow ideal")]
    NonAdmissibleRelations(usize),
    #[error("nilpotency bound {bound} is too small: path {path} of that length is nonzero modulo the relations")]
    BoundTooSmall { bound: usize, path: String },
    #[error("algebra table check failed: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("map does not intertwine the module actions: {0}")]
    NotAModuleMap(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("no splitting idempotent found in End of a module of dimension {dim} within the search budget")]
    FieldTooSmallForSplit { dim: usize },

    #[error("algebra is not Iwanaga-Gorenstein within the resolution cap {cap}")]
    NotGorenstein { cap: usize },
    #[error("context is not Frobenius-closed: {generator}: {witness}")]
    NotFrobeniusClosed { generator: String, witness: String },
    #[error("no admissible monomorphism into a projective for a module of dimension {dim}")]
    NoAdmissibleMono { dim: usize },
    #[error("module is not a member of the context: {0}")]
    NotMember(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("morphism is not injective")]
    NotInjective,
    #[error("objects live in different contexts")]
    ContextMismatch,
    #[error("operation needs a Gorenstein-mode context")]
    NotGorensteinContext,
    #[error("left cocycle is still not a member after {steps} syzygy steps")]
    StabilizationFailed { steps: usize },
    #[error("linear system expected to be solvable was not: {0}")]
    Unsolvable(String),
    #[error("workspace: {0}")]
    Workspace(String),
}
